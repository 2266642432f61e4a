//! Ext groups, the finite part and the torsion decomposition.

use alexmod::ext::{dm, dm_embedded, ext, finite_structure, free_resolution, torsion_parts, Limits};
use alexmod::fixtures;
use alexmod::modules::DEFAULT_PRIMES;

fn main() {
    let lim = Limits::default();
    let m = fixtures::example_module();
    let res = free_resolution(&m, &lim).unwrap();
    println!("resolution ranks {:?}, certified {}", res.ranks(), res.certify(&lim).unwrap());
    for q in 0..=2 {
        let e = ext(&m, q, &lim).unwrap();
        println!("E^{q}: {} gens, battery {:?}", e.module.gens(), e.module.battery(&DEFAULT_PRIMES).q);
    }
    let e2 = finite_structure(&ext(&m, 2, &lim).unwrap().module, &lim).unwrap();
    println!("E^2 M as a finite module: {:?}", e2.battery());
    println!("DM via E^2E^2: order {}", dm(&m, &lim).unwrap().order());
    println!("DM inside M:   order {}", dm_embedded(&m, &lim).unwrap().order());
    let mixed = fixtures::plus_one_mod(3).direct_sum(&alexmod::modules::PresentedModule::free(1));
    let parts = torsion_parts(&mixed, &lim).unwrap();
    println!("TM gens {}, BM beta {}, TM/DM gens {}", parts.tm.gens(), parts.bm.lambda_rank(), parts.tdm.gens());
}

//! Ribbon and general genus lower bounds on the separating family.

use alexmod::ext::Limits;
use alexmod::fixtures;
use alexmod::realization::{general_genus_lower_bound, ribbon_genus_lower_bound};

fn main() {
    let lim = Limits::default();
    for r in 1..=2 {
        for n in 1..=3 {
            let m = fixtures::separating_family(n, r);
            let ribbon = ribbon_genus_lower_bound(&m, &lim).unwrap();
            let general = general_genus_lower_bound(&m, &lim).unwrap();
            println!("r={r} n={n}: ribbon {ribbon}, general {}", general.bound);
        }
    }
    let a = general_genus_lower_bound(&fixtures::plus_one_mod(3), &lim).unwrap();
    println!("[t+1, 3]: general {} with witness of order {:?}", a.bound, a.witness.map(|w| w.order()));
}

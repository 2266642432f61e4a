//! The invariant battery of a presented module.

use alexmod::fixtures;
use alexmod::modules::DEFAULT_PRIMES;

fn main() {
    for (name, m) in fixtures::module_grid() {
        let r = m.report(&DEFAULT_PRIMES);
        println!(
            "{name:14} corank {:?} beta {} q {:?} F2 {:?} delta {:?}",
            r.corank, r.beta, r.q_factors, r.fp_factors[&2], r.alexander
        );
    }
    println!("{}", fixtures::example_module().to_json());
}

//! Realizability verdicts, including the non-classical witness.

use alexmod::ext::Limits;
use alexmod::fixtures;
use alexmod::realization::classify;

fn main() {
    let lim = Limits::default();
    let cases = [
        ("virtual example", fixtures::example_module(), Some(2)),
        ("(2t-1, 5)^2", fixtures::two_t_minus_one_mod(5).power(2), Some(1)),
        ("trefoil", fixtures::module_grid()[3].1.clone(), Some(1)),
    ];
    for (name, m, r) in cases {
        let c = classify(&m, r, None, &lim).unwrap();
        println!(
            "{name:16} virtual {} not-classical {} min ribbon genus {:?}",
            c.virtual_link, c.not_classical, c.min_ribbon_genus
        );
    }
}

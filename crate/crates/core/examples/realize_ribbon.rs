//! Realizing a cokernel-free module by a ribbon surface-link.

use alexmod::fixtures;
use alexmod::realization::{normalized_presentation, realize, RealizationInput};
use alexmod::ext::Limits;

fn main() {
    let m = fixtures::example_module();
    for partition in [vec![1, 1], vec![2, 0], vec![2, 1]] {
        let out = realize(&RealizationInput { module: m.clone(), partition: partition.clone() }).unwrap();
        println!("partition {partition:?}: genera {:?}, padding {}", out.genera, out.padding);
        println!("  group: {}", out.group);
    }
    match realize(&RealizationInput { module: fixtures::plus_one_mod(3), partition: vec![0] }) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("[t+1, 3] at genus 0: {e}"),
    }
    let n = normalized_presentation(&fixtures::plus_one_mod(3), &Limits::default()).unwrap();
    println!("normalized [t+1, 3]: achieved {} of bound {}, gap {}", n.achieved, n.bound, n.gap);
}

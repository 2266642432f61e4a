//! Wirtinger presentations and Alexander polynomials from Gauss codes.

use alexmod::fixtures;

fn main() {
    for (name, code) in fixtures::diagrams() {
        let g = code.wirtinger();
        let m = g.alexander_module(0).unwrap();
        println!("{name:16} {} generators, delta0 = {}", g.gens(), m.alexander_polynomial(0).to_text());
    }
    let trefoil = fixtures::code(fixtures::TREFOIL).wirtinger();
    println!("trefoil group: {trefoil}");
}

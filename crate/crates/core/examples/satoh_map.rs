//! The Satoh map from virtual diagrams to disk-arc presentations.

use alexmod::diagrams::{same_wirtinger, GaussCode};
use alexmod::fixtures;

fn main() {
    let code = fixtures::code(fixtures::VIRTUAL_EXAMPLE);
    let d = code.satoh();
    println!("{}", serde_json::to_string(&d).unwrap());
    println!("genera {:?}", d.genera());
    println!("same group as the diagram: {}", same_wirtinger(&d.wirtinger(), &code.wirtinger()));
    let fig = fixtures::example_diskarc();
    println!("two-disk fixture group: {}", fig.wirtinger());
    println!("empty code: {:?}", GaussCode::parse("").unwrap().satoh());
}

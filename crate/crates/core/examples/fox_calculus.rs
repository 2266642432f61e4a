//! Fox derivatives of words and the fundamental identity.

use alexmod::words::Word;

fn main() {
    let w = Word::parse("x0 x1 x0^-1 x1^-1 x2^2").unwrap();
    println!("w = {w}, gamma = {}", w.gamma());
    for (i, d) in w.fox_row(3).unwrap().iter().enumerate() {
        println!("  dw/dx{i} = {}", d.to_text());
    }
    println!("sum dw/dx_i (t - 1) = t^gamma - 1: {}", w.fox_identity_holds(3));
}

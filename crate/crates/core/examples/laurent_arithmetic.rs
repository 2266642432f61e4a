//! Exact Laurent arithmetic and Smith normal forms.

use alexmod::laurent::{parse_poly, snf, to_q_matrix, LambdaMatrix, ZPoly};

fn main() {
    let f: ZPoly = parse_poly((), "t^2 - t + 1").unwrap();
    let g = ZPoly::t_minus_one();
    println!("f * g = {}", (&f * &g).to_text());
    println!("conjugate of f*g = {}", (&f * &g).conjugate().normalize_unit().to_text());
    let h: ZPoly = parse_poly((), "t^-2 - t^-3").unwrap();
    println!("t^-2 - t^-3 normalized = {}", h.normalize_unit().to_text());

    let a = LambdaMatrix::from_rows((), 2, vec![vec![f.clone(), g.clone()], vec![g.clone(), ZPoly::z_int(2)]]);
    let s = snf(&to_q_matrix(&a));
    let diag: Vec<String> = s.diagonal().iter().map(|d| d.to_text()).collect();
    println!("Q[t, t^-1] invariant factors: {diag:?}");
    let s1 = snf(&a.eval_at_one());
    println!("SNF at t = 1: {:?}", s1.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>());
}

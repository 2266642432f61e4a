//! Exact Laurent polynomials over Z, Q and F_p, dense matrices over them,
//! and Smith normal forms over the Euclidean rings Z, Q[t, t⁻¹] and
//! F_p[t, t⁻¹].

mod coeff;
mod matrix;
mod parse;
mod poly;
mod snf;

use thiserror::Error;

pub use coeff::{is_prime, Coeff, FieldCoeff, Fp, Ring};
pub use matrix::{IntMatrix, LambdaMatrix, Matrix, RingElem};
pub use parse::{as_text, parse_poly};
pub use poly::{FpPoly, Laurent, QPoly, ZPoly};
pub use snf::{snf, Euclidean, Snf};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("cannot parse polynomial {input:?}: {msg}")]
    Parse { input: String, msg: String },
}

/// Reduces an integer Laurent matrix into Q[t, t⁻¹].
pub fn to_q_matrix(m: &LambdaMatrix) -> Matrix<QPoly> {
    m.map((), |p| p.to_q())
}

/// Reduces an integer Laurent matrix into F_p[t, t⁻¹].
pub fn to_fp_matrix(m: &LambdaMatrix, p: u64) -> Matrix<FpPoly> {
    m.map(p, |x| x.to_fp(p))
}

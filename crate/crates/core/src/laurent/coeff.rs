//! Coefficient rings: Z, Q and F_p.
//!
//! Every coefficient type carries a small context value (`()` for Z and Q,
//! the modulus for F_p) so that polynomials can build constants without
//! guessing which ring they live in.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Tag naming the ambient coefficient ring of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    Fp(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Copy + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn ring(ctx: Self::Ctx) -> Ring;
    fn zero(ctx: Self::Ctx) -> Self;
    fn from_bigint(ctx: Self::Ctx, v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self, ctx: Self::Ctx) -> Self;
    fn mul(&self, other: &Self, ctx: Self::Ctx) -> Self;
    fn neg(&self, ctx: Self::Ctx) -> Self;

    fn from_i64(ctx: Self::Ctx, v: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(v))
    }
    fn one(ctx: Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }
    fn sub(&self, other: &Self, ctx: Self::Ctx) -> Self {
        self.add(&other.neg(ctx), ctx)
    }
    /// Sign used by unit normalization over Z; F_p residues are never negative.
    fn is_negative(&self) -> bool;
    fn is_one(&self, ctx: Self::Ctx) -> bool {
        *self == Self::one(ctx)
    }
    /// Text form used by the polynomial printer.
    fn to_text(&self) -> String;
    fn parse_text(ctx: Self::Ctx, s: &str) -> Option<Self>;
    /// `self / d` when the quotient exists in the ring.
    fn exact_div(&self, d: &Self, ctx: Self::Ctx) -> Option<Self>;
}

/// Coefficients that form a field.
pub trait FieldCoeff: Coeff {
    fn inv(&self, ctx: Self::Ctx) -> Self;
}

/// Residue modulo a prime, stored in `[0, p)`. The modulus lives in the
/// polynomial context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(pub u64);

impl Coeff for BigInt {
    type Ctx = ();

    fn ring(_: ()) -> Ring {
        Ring::Z
    }
    fn zero(_: ()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_bigint(_: (), v: &BigInt) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self, _: ()) -> Self {
        self + other
    }
    fn mul(&self, other: &Self, _: ()) -> Self {
        self * other
    }
    fn neg(&self, _: ()) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(_: (), s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn exact_div(&self, d: &Self, _: ()) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn ring(_: ()) -> Ring {
        Ring::Q
    }
    fn zero(_: ()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_bigint(_: (), v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self, _: ()) -> Self {
        self + other
    }
    fn mul(&self, other: &Self, _: ()) -> Self {
        self * other
    }
    fn neg(&self, _: ()) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_text(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn parse_text(_: (), s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if Zero::is_zero(&d) {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
    fn exact_div(&self, d: &Self, _: ()) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
}

impl FieldCoeff for BigRational {
    fn inv(&self, _: ()) -> Self {
        self.recip()
    }
}

impl Coeff for Fp {
    type Ctx = u64;

    fn ring(p: u64) -> Ring {
        Ring::Fp(p)
    }
    fn zero(_: u64) -> Self {
        Fp(0)
    }
    fn from_bigint(p: u64, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(p));
        Fp(r.to_u64().expect("residue fits in u64"))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self, p: u64) -> Self {
        Fp(((self.0 as u128 + other.0 as u128) % p as u128) as u64)
    }
    fn mul(&self, other: &Self, p: u64) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % p as u128) as u64)
    }
    fn neg(&self, p: u64) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(p - self.0)
        }
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn to_text(&self) -> String {
        self.0.to_string()
    }
    fn parse_text(p: u64, s: &str) -> Option<Self> {
        s.parse::<BigInt>().ok().map(|v| Fp::from_bigint(p, &v))
    }
    fn exact_div(&self, d: &Self, p: u64) -> Option<Self> {
        (d.0 != 0).then(|| self.mul(&d.inv(p), p))
    }
}

impl FieldCoeff for Fp {
    fn inv(&self, p: u64) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{p}");
        // p is prime, so a^(p-2) is the inverse.
        let mut base = self.0 as u128;
        let mut exp = p - 2;
        let mut acc: u128 = 1;
        let m = p as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Fp(acc as u64)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        assert_eq!(Fp(2).inv(5), Fp(3));
        assert_eq!(Fp(3).mul(&Fp(3).inv(7), 7), Fp(1));
    }

    #[test]
    fn fp_reduces_negative_values() {
        assert_eq!(Fp::from_i64(5, -1), Fp(4));
        assert_eq!(Fp::from_i64(2, -2), Fp(0));
    }

    #[test]
    fn rational_text() {
        let q = BigRational::parse_text((), "3/6").unwrap();
        assert_eq!(q.to_text(), "1/2");
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}

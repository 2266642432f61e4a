use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{Coeff, FieldCoeff, Fp, Ring};
use super::LaurentError;

/// An exact Laurent polynomial `Σ c_k t^k` over a coefficient ring.
///
/// The term map never stores a zero coefficient, so the zero polynomial is
/// the empty map and structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C: Coeff> {
    ctx: C::Ctx,
    terms: BTreeMap<i64, C>,
}

/// Element of Λ = Z[t, t⁻¹].
pub type ZPoly = Laurent<BigInt>;
/// Element of Λ_Q = Q[t, t⁻¹].
pub type QPoly = Laurent<BigRational>;
/// Element of Λ_p = F_p[t, t⁻¹].
pub type FpPoly = Laurent<Fp>;

impl<C: Coeff> Laurent<C> {
    pub fn zero(ctx: C::Ctx) -> Self {
        Laurent { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: C::Ctx) -> Self {
        Self::monomial(ctx, C::one(ctx), 0)
    }

    pub fn constant(ctx: C::Ctx, c: C) -> Self {
        Self::monomial(ctx, c, 0)
    }

    pub fn from_int(ctx: C::Ctx, c: i64) -> Self {
        Self::constant(ctx, C::from_i64(ctx, c))
    }

    pub fn monomial(ctx: C::Ctx, c: C, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { ctx, terms }
    }

    /// The variable `t`.
    pub fn t(ctx: C::Ctx) -> Self {
        Self::monomial(ctx, C::one(ctx), 1)
    }

    /// `t^k`.
    pub fn t_pow(ctx: C::Ctx, k: i64) -> Self {
        Self::monomial(ctx, C::one(ctx), k)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(ctx: C::Ctx, terms: I) -> Self {
        let mut out = Self::zero(ctx);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// Builds a polynomial from small integer coefficients, lowest exponent
    /// first: `from_coeffs(ctx, -1, &[1, -2, 1])` is `t⁻¹ - 2 + t`.
    pub fn from_coeffs(ctx: C::Ctx, low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            ctx,
            coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, C::from_i64(ctx, c))),
        )
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn ring(&self) -> Ring {
        C::ring(self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one(self.ctx))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(|| C::zero(self.ctx))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, the Euclidean size of a Laurent polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn lowest_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    fn add_term(&mut self, exp: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        let ctx = self.ctx;
        let sum = match self.terms.get(&exp) {
            Some(old) => old.add(c, ctx),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), LaurentError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(LaurentError::RingMismatch { left: self.ring(), right: other.ring() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, &c.neg(self.ctx));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ctx);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2, self.ctx));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.ctx, self.terms.iter().map(|(&e, x)| (e, x.mul(c, self.ctx))))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { ctx: self.ctx, terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `t ↦ t⁻¹`.
    pub fn conjugate(&self) -> Self {
        Laurent { ctx: self.ctx, terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> C {
        self.terms.values().fold(C::zero(self.ctx), |acc, c| acc.add(c, self.ctx))
    }

    /// Units of Z[t, t⁻¹] are `±t^k`; over a field every monomial is a unit.
    pub fn is_unit(&self) -> bool {
        match self.terms.len() {
            1 => {
                let c = self.lowest_coeff().unwrap();
                match self.ring() {
                    Ring::Z => c.is_one(self.ctx) || c.neg(self.ctx).is_one(self.ctx),
                    _ => true,
                }
            }
            _ => false,
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        let inv = C::one(self.ctx).exact_div(c, self.ctx)?;
        Some(Self::monomial(self.ctx, inv, -e))
    }

    /// The unit `u` with `u * self` canonical, see [`Laurent::normalize_unit`].
    pub fn normalizing_unit(&self) -> Self {
        let Some(low) = self.min_exp() else {
            return Self::one(self.ctx);
        };
        let c = match self.ring() {
            Ring::Z => {
                if self.leading_coeff().unwrap().is_negative() {
                    C::from_i64(self.ctx, -1)
                } else {
                    C::one(self.ctx)
                }
            }
            _ => C::one(self.ctx).exact_div(self.leading_coeff().unwrap(), self.ctx).unwrap(),
        };
        Self::monomial(self.ctx, c, -low)
    }

    /// Canonical associate under the unit group. The lowest exponent becomes
    /// 0; over Z the leading coefficient is made positive, over a field the
    /// polynomial is made monic.
    pub fn normalize_unit(&self) -> Self {
        &self.normalizing_unit() * self
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.ctx));
        }
        let dlow = d.min_exp().unwrap();
        let dlead_e = d.max_exp().unwrap();
        let dlead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut q = Self::zero(self.ctx);
        while let Some(top) = rem.max_exp() {
            let low = rem.min_exp().unwrap();
            if top - low < dlead_e - dlow {
                return None;
            }
            let c = rem.leading_coeff().unwrap().exact_div(&dlead, self.ctx)?;
            let m = Self::monomial(self.ctx, c, top - dlead_e);
            rem = &rem - &(&m * d);
            q = &q + &m;
        }
        Some(q)
    }

    /// Coefficient-wise map into another ring.
    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, ctx: D::Ctx, f: F) -> Laurent<D> {
        Laurent::from_terms(ctx, self.terms.iter().map(|(&e, c)| (e, f(c))))
    }

    /// Text form, highest exponent first, e.g. `t^2 - t + 1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.neg(self.ctx) } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one(self.ctx);
            match e {
                0 => out.push_str(&mag.to_text()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_text());
                        out.push('*');
                    }
                    out.push('t');
                    if e != 1 {
                        out.push('^');
                        out.push_str(&e.to_string());
                    }
                }
            }
        }
        out
    }
}

impl ZPoly {
    pub fn z_zero() -> Self {
        Self::zero(())
    }
    pub fn z_one() -> Self {
        Self::one(())
    }
    pub fn z_int(c: i64) -> Self {
        Self::from_int((), c)
    }
    /// Shorthand for `from_coeffs((), low, coeffs)`.
    pub fn z(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs((), low, coeffs)
    }
    /// `t - 1`.
    pub fn t_minus_one() -> Self {
        Self::z(0, &[-1, 1])
    }

    pub fn to_q(&self) -> QPoly {
        self.map_coeffs((), |c| BigRational::from_integer(c.clone()))
    }

    pub fn to_fp(&self, p: u64) -> FpPoly {
        self.map_coeffs(p, |c| Fp::from_bigint(p, c))
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::from(0), |acc, c| acc.gcd(c))
    }
}

impl QPoly {
    /// Clears denominators and content, giving a primitive integer
    /// polynomial with the same associate class over Q.
    pub fn to_primitive_z(&self) -> ZPoly {
        use num_integer::Integer;
        let lcm = self.terms.values().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let z: ZPoly = Laurent::from_terms((), self.terms.iter().map(|(&e, c)| (e, c.numer() * (&lcm / c.denom()))));
        let content = z.content();
        if content == BigInt::from(0) {
            return z;
        }
        z.map_coeffs((), |c| c / &content)
    }
}

impl<C: FieldCoeff> Laurent<C> {
    /// Euclidean division with respect to the span: `self = q * d + r` with
    /// `span(r) < span(d)` or `r = 0`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let ctx = self.ctx;
        let dlow = d.min_exp().unwrap();
        let dtop = d.max_exp().unwrap();
        let dinv = d.leading_coeff().unwrap().inv(ctx);
        let mut rem = self.clone();
        let mut q = Self::zero(ctx);
        let Some(alow) = self.min_exp() else {
            return (q, rem);
        };
        // Work relative to the lowest exponent of the dividend so the
        // remainder keeps its exponents inside [alow, alow + span(d)).
        while let Some(top) = rem.max_exp() {
            if top - alow < dtop - dlow {
                break;
            }
            let c = rem.leading_coeff().unwrap().mul(&dinv, ctx);
            let m = Self::monomial(ctx, c, top - dtop);
            rem = &rem - &(&m * d);
            q = &q + &m;
        }
        (q, rem)
    }

    /// Monic-normalized gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.normalize_unit()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> $tr<&Laurent<C>> for &Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &Laurent<C>) -> Laurent<C> {
                self.$checked(rhs).expect("ring mismatch in Laurent arithmetic")
            }
        }
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$checked(&rhs).expect("ring mismatch in Laurent arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent { ctx: self.ctx, terms: self.terms.iter().map(|(&e, c)| (e, c.neg(self.ctx))).collect() }
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.to_text(), self.ring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    #[test]
    fn binomial_square() {
        let a = z(0, &[-1, 1]);
        assert_eq!(&a * &a, z(0, &[1, -2, 1]));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = &z(0, &[1, 1]) + &z(0, &[-1, -1]);
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn multiply_by_inverse_power() {
        // (2t - 1) * t^-1 = 2 - t^-1, expanded by hand.
        assert_eq!(&z(0, &[-1, 2]) * &z(-1, &[1]), z(-1, &[-1, 2]));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(0, &[1, -1, 1]).conjugate(), z(-2, &[1, -1, 1]));
        assert_eq!(z(0, &[-1, 2]).conjugate(), z(-1, &[2, -1]));
        assert!(ZPoly::z_zero().conjugate().is_zero());
    }

    #[test]
    fn normalization_over_z() {
        // -t^3 + t^2: lowest term t^2 with positive coefficient, so t^-2 gives 1 - t.
        assert_eq!(z(2, &[1, -1]).normalize_unit(), z(0, &[-1, 1]));
        assert_eq!(ZPoly::z_int(5).normalize_unit(), ZPoly::z_int(5));
        assert_eq!(z(-1, &[1, 0, -1]).normalize_unit(), z(0, &[-1, 0, 1]));
        assert_eq!(z(-1, &[1, -1]).normalize_unit(), z(0, &[-1, 1]));
        assert_eq!(z(3, &[-2, 0, 1]).normalize_unit(), z(0, &[-2, 0, 1]));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = z(0, &[1, 1]).to_fp(3);
        let b = z(0, &[1, 1]).to_fp(5);
        assert!(matches!(a.checked_add(&b), Err(LaurentError::RingMismatch { .. })));
    }

    #[test]
    fn field_gcd_examples() {
        let a = z(0, &[1, -2, 1]).to_q();
        let b = z(0, &[-2, 2]).to_q();
        assert_eq!(a.gcd(&b), z(0, &[-1, 1]).to_q());
        let c = z(0, &[1, 1]).to_fp(3);
        assert_eq!(c.gcd(&c), c);
        let d = z(-2, &[3, 6]).to_q();
        assert_eq!(d.gcd(&QPoly::zero(())), d.normalize_unit());
        assert!(QPoly::zero(()).gcd(&QPoly::zero(())).is_zero());
    }

    #[test]
    fn exact_division_by_t_minus_one() {
        let f = z(-1, &[2, -3, 1]); // 2t^-1 - 3 + t = t^-1 (t-1)(t-2)
        assert_eq!(f.exact_div(&ZPoly::t_minus_one()), Some(z(-1, &[-2, 1])));
        assert_eq!(ZPoly::z_one().exact_div(&ZPoly::t_minus_one()), None);
        assert_eq!(z(0, &[1, 2]).exact_div(&ZPoly::z_int(2)), None);
    }

    #[test]
    fn euclidean_remainder_is_smaller() {
        let a = z(-3, &[1, 0, 4, 0, 1, 7]).to_q();
        let b = z(1, &[2, 0, 3]).to_q();
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.is_zero() || r.span().unwrap() < b.span().unwrap());
    }

    #[test]
    fn printing() {
        assert_eq!(z(0, &[1, -1, 1]).to_text(), "t^2 - t + 1");
        assert_eq!(z(-1, &[2, -1]).to_text(), "-1 + 2*t^-1");
        assert_eq!(ZPoly::z_zero().to_text(), "0");
        assert_eq!(z(0, &[0, -1]).to_text(), "-t");
    }
}

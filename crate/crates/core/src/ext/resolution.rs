//! Syzygies over Λ, length-three free resolutions and `E^q = Ext^q(−, Λ)`.

use serde::{Deserialize, Serialize};

use super::groebner::{clear_columns, lead, saturate, zt_kernel, Groebner, Lifter, UPoly, UVec};
use super::{ExtError, Limits};
use crate::laurent::{LambdaMatrix, ZPoly};
use crate::modules::PresentedModule;

/// Divides a vector by the largest power of `t` dividing all entries and
/// fixes the sign of the first nonzero entry.
fn normalize_vector(v: Vec<ZPoly>) -> Vec<ZPoly> {
    let lo = v.iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
    let mut v: Vec<ZPoly> = v.iter().map(|p| p.shift(-lo)).collect();
    if v.iter().find(|p| !p.is_zero()).and_then(|p| p.lowest_coeff()).is_some_and(|c| c.sign() == num_bigint::Sign::Minus) {
        v = v.iter().map(|p| -p).collect();
    }
    v
}

/// Columns generating `ker(a : Λ^cols → Λ^rows)`.
pub fn syzygy(a: &LambdaMatrix, lim: &Limits) -> Result<LambdaMatrix, ExtError> {
    let n = a.cols();
    if n == 0 {
        return Ok(LambdaMatrix::zeros((), 0, 0));
    }
    if a.rows() == 0 || a.is_zero() {
        return Ok(LambdaMatrix::identity((), n));
    }
    let (cols, shifts) = clear_columns(a);
    let ker = zt_kernel(a.rows(), &cols, lim)?;
    let out: Vec<Vec<ZPoly>> = ker
        .iter()
        .map(|v| normalize_vector(v.iter().zip(&shifts).map(|(p, &s)| p.to_laurent().shift(s)).collect()))
        .collect();
    Ok(LambdaMatrix::from_cols((), n, out))
}

/// Membership in the Λ-span of a set of columns.
pub struct SpanTester {
    gb: Groebner,
}

impl SpanTester {
    pub fn new(gens: &LambdaMatrix, lim: &Limits) -> Result<Self, ExtError> {
        let (cols, _) = clear_columns(gens);
        Ok(SpanTester { gb: saturate(gens.rows(), cols, lim)? })
    }

    pub fn contains(&self, v: &[ZPoly]) -> bool {
        let lo = v.iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
        let w: UVec = v.iter().map(|p| UPoly::from_laurent(&p.shift(-lo))).collect();
        lead(&self.gb.top_reduce(w)).is_none()
    }

    pub fn contains_all(&self, m: &LambdaMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.col(j)))
    }
}

/// `K/L` inside Λ^ambient, with `gens · certificate = relations`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subquotient {
    pub ambient: usize,
    #[serde(with = "matrix_text")]
    pub gens: LambdaMatrix,
    #[serde(with = "matrix_text")]
    pub relations: LambdaMatrix,
    #[serde(with = "matrix_text")]
    pub certificate: LambdaMatrix,
}

impl Subquotient {
    pub fn new(gens: LambdaMatrix, relations: LambdaMatrix, lim: &Limits) -> Result<Self, ExtError> {
        let ambient = gens.rows();
        let lifter = Lifter::new(&gens, lim)?;
        let mut cert = Vec::with_capacity(relations.cols());
        for j in 0..relations.cols() {
            let x = lifter.lift(&relations.col(j), lim.lift_shift).ok_or(ExtError::LiftFailed)?;
            cert.push(x);
        }
        let certificate = LambdaMatrix::from_cols((), gens.cols(), cert);
        Ok(Subquotient { ambient, gens, relations, certificate })
    }

    pub fn verify(&self) -> bool {
        self.gens.mul(&self.certificate) == self.relations
    }

    /// A presentation on the generators of `K`.
    pub fn to_module(&self, lim: &Limits) -> Result<PresentedModule, ExtError> {
        let k = self.gens.cols();
        if self.gens == LambdaMatrix::identity((), k) {
            return Ok(PresentedModule::new(k, self.relations.clone())?.simplify());
        }
        let syz = syzygy(&self.gens.hstack(&self.relations), lim)?;
        let rows: Vec<usize> = (0..k).collect();
        let rel = syz.select_rows(&rows);
        Ok(PresentedModule::new(k, rel)?.simplify())
    }
}

/// `Λ^{c3} → Λ^{c2} → Λ^{c1} → Λ^{c0} → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub d: [LambdaMatrix; 3],
}

impl Resolution {
    /// `(c3, c2, c1, c0)`.
    pub fn ranks(&self) -> (usize, usize, usize, usize) {
        (self.d[2].cols(), self.d[1].cols(), self.d[0].cols(), self.d[0].rows())
    }

    /// Composites vanish, and each freshly computed kernel lies in the next
    /// image.
    pub fn certify(&self, lim: &Limits) -> Result<bool, ExtError> {
        for q in 0..2 {
            if !self.d[q].mul(&self.d[q + 1]).is_zero() {
                return Ok(false);
            }
            let ker = syzygy(&self.d[q], lim)?;
            let span = SpanTester::new(&self.d[q + 1], lim)?;
            if !span.contains_all(&ker) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn free_resolution(m: &PresentedModule, lim: &Limits) -> Result<Resolution, ExtError> {
    let d1 = m.relations().clone();
    let d2 = syzygy(&d1, lim)?;
    let d3 = syzygy(&d2, lim)?;
    Ok(Resolution { d: [d1, d2, d3] })
}

/// `E^q M` both as a subquotient of the dual resolution and as a module.
#[derive(Clone, Debug)]
pub struct Ext {
    pub q: usize,
    pub sub: Subquotient,
    pub module: PresentedModule,
}

pub fn ext_of_resolution(res: &Resolution, q: usize, lim: &Limits) -> Result<Ext, ExtError> {
    assert!(q <= 2, "E^q vanishes for q > 2");
    let cq = if q == 0 { res.d[0].rows() } else { res.d[q - 1].cols() };
    let kernel = syzygy(&res.d[q].transpose(), lim)?;
    let kernel = if kernel.rows() == 0 { LambdaMatrix::identity((), cq) } else { kernel };
    let image = if q == 0 { LambdaMatrix::zeros((), cq, 0) } else { res.d[q - 1].transpose() };
    let sub = Subquotient::new(kernel, image, lim)?;
    let module = sub.to_module(lim)?;
    Ok(Ext { q, sub, module })
}

pub fn ext(m: &PresentedModule, q: usize, lim: &Limits) -> Result<Ext, ExtError> {
    ext_of_resolution(&free_resolution(m, lim)?, q, lim)
}

/// Serde adapter: a matrix as `{rows, cols: [[poly-string]]}`.
pub mod matrix_text {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::laurent::{parse_poly, LambdaMatrix};

    #[derive(Serialize, Deserialize)]
    struct Dense {
        rows: usize,
        cols: Vec<Vec<String>>,
    }

    pub fn serialize<S: Serializer>(m: &LambdaMatrix, s: S) -> Result<S::Ok, S::Error> {
        Dense { rows: m.rows(), cols: m.columns().iter().map(|c| c.iter().map(|p| p.to_text()).collect()).collect() }
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LambdaMatrix, D::Error> {
        let dense = Dense::deserialize(d)?;
        let mut cols = Vec::new();
        for c in dense.cols {
            if c.len() != dense.rows {
                return Err(serde::de::Error::custom("column length mismatch"));
            }
            let parsed = c.iter().map(|x| parse_poly((), x)).collect::<Result<Vec<_>, _>>().map_err(serde::de::Error::custom)?;
            cols.push(parsed);
        }
        Ok(LambdaMatrix::from_cols((), dense.rows, cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::DEFAULT_PRIMES;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    fn example() -> PresentedModule {
        PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])])
    }

    #[test]
    fn syzygy_examples() {
        let lim = Limits::default();
        let s = syzygy(example().relations(), &lim).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(s.col(0), vec![ZPoly::z_int(2), z(0, &[1, -1])]);
        assert_eq!(syzygy(&LambdaMatrix::identity((), 3), &lim).unwrap().cols(), 0);
        let k = LambdaMatrix::from_rows((), 2, vec![vec![ZPoly::t_minus_one(), ZPoly::z_int(2)]]);
        assert_eq!(syzygy(&k, &lim).unwrap().col(0), vec![ZPoly::z_int(2), z(0, &[1, -1])]);
    }

    #[test]
    fn resolution_examples() {
        let lim = Limits::default();
        let r = free_resolution(&example(), &lim).unwrap();
        assert_eq!(r.ranks(), (0, 1, 2, 1));
        assert!(r.certify(&lim).unwrap());
        assert_eq!(free_resolution(&PresentedModule::free(3), &lim).unwrap().ranks(), (0, 0, 0, 3));
        let k = PresentedModule::cyclic(&[ZPoly::z_int(2), ZPoly::t_minus_one()]);
        assert_eq!(free_resolution(&k, &lim).unwrap().ranks(), (0, 1, 2, 1));
    }

    #[test]
    fn ext_examples() {
        let lim = Limits::default();
        let e2 = ext(&example(), 2, &lim).unwrap();
        assert!(e2.sub.verify());
        let koszul = PresentedModule::cyclic(&[ZPoly::z_int(2), ZPoly::t_minus_one()]);
        assert!(e2.module.battery_eq(&koszul, &DEFAULT_PRIMES));
        for q in 1..=2 {
            assert_eq!(ext(&PresentedModule::free(2), q, &lim).unwrap().module.gens(), 0);
        }
        let e0 = ext(&PresentedModule::free(2), 0, &lim).unwrap();
        assert!(e0.module.battery_eq(&PresentedModule::free(2), &DEFAULT_PRIMES));
        for a in [3, 9] {
            let m = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(a)]);
            let e = ext(&m, 2, &lim).unwrap();
            assert!(e.module.battery_eq(&m, &DEFAULT_PRIMES), "a={a}");
        }
    }
}

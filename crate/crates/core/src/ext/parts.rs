//! The finite part `DM`, the torsion submodule and the associated quotients.

use super::finite::{annihilating_poly, finite_structure, FiniteModuleData};
use super::resolution::{ext, syzygy, Subquotient};
use super::{ExtError, Limits};
use crate::laurent::{LambdaMatrix, ZPoly};
use crate::modules::PresentedModule;

/// `DM = E²E²M`, the largest finite submodule.
pub fn dm(m: &PresentedModule, lim: &Limits) -> Result<FiniteModuleData, ExtError> {
    let e2 = ext(m, 2, lim)?.module;
    let e22 = ext(&e2, 2, lim)?.module;
    finite_structure(&e22, lim).map_err(|e| match e {
        ExtError::NotFinite => ExtError::FinitenessCertificationFailed,
        other => other,
    })
}

/// Generators in Λ^r of `X = (0 :_M (N, f))`, the preimage of `DM`, where
/// `N` is the exponent and `f` a monic annihilator of `DM`.
pub fn dm_generators(m: &PresentedModule, lim: &Limits) -> Result<LambdaMatrix, ExtError> {
    let d = dm(m, lim)?;
    let r = m.gens();
    if d.is_zero() || r == 0 {
        return Ok(m.relations().clone());
    }
    let n = ZPoly::z_int(d.exponent() as i64);
    let f = annihilating_poly(&d);
    let a = m.relations();
    let scaled = |p: &ZPoly| {
        let mut s = LambdaMatrix::zeros((), r, r);
        for i in 0..r {
            s[(i, i)] = p.clone();
        }
        s
    };
    let system = scaled(&n).vstack(&scaled(&f)).hstack(&a.block_diag(a));
    let syz = syzygy(&system, lim)?;
    let rows: Vec<usize> = (0..r).collect();
    Ok(syz.select_rows(&rows).hstack(a))
}

/// `DM` computed inside `M` rather than through the double dual.
pub fn dm_embedded(m: &PresentedModule, lim: &Limits) -> Result<FiniteModuleData, ExtError> {
    let x = dm_generators(m, lim)?;
    let sub = Subquotient::new(x, m.relations().clone(), lim)?;
    finite_structure(&sub.to_module(lim)?, lim).map_err(|e| match e {
        ExtError::NotFinite => ExtError::FinitenessCertificationFailed,
        other => other,
    })
}

/// `TM`, `BM = M/TM` and `TM/DM`.
#[derive(Clone, Debug)]
pub struct TorsionParts {
    pub tm: PresentedModule,
    pub bm: PresentedModule,
    pub tdm: PresentedModule,
}

pub fn torsion_parts(m: &PresentedModule, lim: &Limits) -> Result<TorsionParts, ExtError> {
    let r = m.gens();
    let a = m.relations();
    if r == 0 {
        let z = PresentedModule::zero();
        return Ok(TorsionParts { tm: z.clone(), bm: z.clone(), tdm: z });
    }
    // TM is the kernel of M → M**, i.e. of Kᵀ with K generating Hom(M, Λ).
    let k = syzygy(&a.transpose(), lim)?;
    let k_sub = if k.cols() == 0 { LambdaMatrix::identity((), r) } else { syzygy(&k.transpose(), lim)? };
    let tm = Subquotient::new(k_sub.clone(), a.clone(), lim)?.to_module(lim)?;
    let bm = PresentedModule::new(r, k_sub.clone())?.simplify();
    let x = dm_generators(m, lim)?;
    let tdm = Subquotient::new(k_sub, x, lim)?.to_module(lim)?;
    Ok(TorsionParts { tm, bm, tdm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::DEFAULT_PRIMES;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    #[test]
    fn finite_parts() {
        let lim = Limits::default();
        let m = PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])]);
        let d = dm(&m, &lim).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(dm_embedded(&m, &lim).unwrap().battery(), d.battery());
        let f = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]);
        assert_eq!(dm(&f, &lim).unwrap().order(), 3);
        assert!(dm(&PresentedModule::cyclic(&[z(0, &[1, -1, 1])]), &lim).unwrap().is_zero());
        assert!(dm(&PresentedModule::free(2), &lim).unwrap().is_zero());
    }

    #[test]
    fn torsion_split() {
        let lim = Limits::default();
        let fin = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]);
        let m = fin.direct_sum(&PresentedModule::free(1)).direct_sum(&PresentedModule::cyclic(&[z(0, &[1, -1, 1])]));
        let p = torsion_parts(&m, &lim).unwrap();
        assert!(p.bm.battery_eq(&PresentedModule::free(1), &DEFAULT_PRIMES));
        let tm = fin.direct_sum(&PresentedModule::cyclic(&[z(0, &[1, -1, 1])]));
        assert!(p.tm.battery_eq(&tm, &DEFAULT_PRIMES));
        assert!(p.tdm.battery_eq(&PresentedModule::cyclic(&[z(0, &[1, -1, 1])]), &DEFAULT_PRIMES));
    }
}

//! Finitely presented Λ-modules and their PID-shadow invariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{
    parse_poly, snf, to_fp_matrix, to_q_matrix, Euclidean, FieldCoeff, Laurent, LambdaMatrix, ZPoly,
};

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("relation matrix has {rows} rows but the module has {gens} generators")]
    DimensionMismatch { gens: usize, rows: usize },
    #[error("module is not cokernel-free: M/(t-1)M has torsion {torsion:?}")]
    NotCokernelFree { torsion: Vec<String> },
    #[error("bad module input: {0}")]
    Parse(String),
}

/// `coker(Λ^relators → Λ^gens)`; column `j` of `relations` is relator `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModuleJson", into = "ModuleJson")]
pub struct PresentedModule {
    gens: usize,
    relations: LambdaMatrix,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    gens: usize,
    relations: Vec<Vec<String>>,
}

impl TryFrom<ModuleJson> for PresentedModule {
    type Error = ModuleError;
    fn try_from(j: ModuleJson) -> Result<Self, ModuleError> {
        let mut cols = Vec::with_capacity(j.relations.len());
        for (c, col) in j.relations.iter().enumerate() {
            if col.len() != j.gens {
                return Err(ModuleError::Parse(format!(
                    "relator {c} has {} entries, expected {}",
                    col.len(),
                    j.gens
                )));
            }
            let parsed = col
                .iter()
                .map(|s| parse_poly((), s).map_err(|e| ModuleError::Parse(e.to_string())))
                .collect::<Result<Vec<ZPoly>, _>>()?;
            cols.push(parsed);
        }
        Ok(PresentedModule::from_columns(j.gens, cols))
    }
}

impl From<PresentedModule> for ModuleJson {
    fn from(m: PresentedModule) -> Self {
        ModuleJson {
            gens: m.gens,
            relations: m.relations.columns().iter().map(|c| c.iter().map(|p| p.to_text()).collect()).collect(),
        }
    }
}

impl PresentedModule {
    pub fn new(gens: usize, relations: LambdaMatrix) -> Result<Self, ModuleError> {
        if relations.rows() != gens {
            return Err(ModuleError::DimensionMismatch { gens, rows: relations.rows() });
        }
        Ok(PresentedModule { gens, relations })
    }

    pub fn from_columns(gens: usize, cols: Vec<Vec<ZPoly>>) -> Self {
        PresentedModule { gens, relations: LambdaMatrix::from_cols((), gens, cols) }
    }

    /// `Λ/(f₁, …, f_k)`.
    pub fn cyclic(rels: &[ZPoly]) -> Self {
        PresentedModule::from_columns(1, rels.iter().map(|f| vec![f.clone()]).collect())
    }

    pub fn free(rank: usize) -> Self {
        PresentedModule { gens: rank, relations: LambdaMatrix::zeros((), rank, 0) }
    }

    pub fn zero() -> Self {
        PresentedModule::free(0)
    }

    pub fn from_json(text: &str) -> Result<Self, ModuleError> {
        serde_json::from_str(text).map_err(|e| ModuleError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("module serializes")
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &LambdaMatrix {
        &self.relations
    }

    pub fn num_relations(&self) -> usize {
        self.relations.cols()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule { gens: self.gens + other.gens, relations: self.relations.block_diag(&other.relations) }
    }

    pub fn power(&self, n: usize) -> PresentedModule {
        (0..n).fold(PresentedModule::zero(), |acc, _| acc.direct_sum(self))
    }

    /// Invariants of `M/(t-1)M` as an abelian group: nonunit factors in
    /// divisibility order followed by one `0` per free summand.
    pub fn t1_invariants(&self) -> Vec<BigInt> {
        let s = snf(&self.relations.eval_at_one());
        let mut out: Vec<BigInt> = s.diagonal().into_iter().filter(|d| !d.is_one()).collect();
        out.extend(std::iter::repeat(BigInt::zero()).take(self.gens - s.rank));
        out
    }

    pub fn corank(&self) -> Result<usize, ModuleError> {
        let inv = self.t1_invariants();
        let torsion: Vec<String> = inv.iter().filter(|d| !d.is_zero()).map(|d| d.to_string()).collect();
        if torsion.is_empty() {
            Ok(inv.len())
        } else {
            Err(ModuleError::NotCokernelFree { torsion })
        }
    }

    pub fn is_cokernel_free(&self) -> bool {
        self.corank().is_ok()
    }

    pub fn lambda_rank(&self) -> usize {
        self.gens - snf(&to_q_matrix(&self.relations)).rank
    }

    /// `τ = corank − β`.
    pub fn torsion_corank(&self) -> Result<i64, ModuleError> {
        Ok(self.corank()? as i64 - self.lambda_rank() as i64)
    }

    pub fn q_invariant_factors(&self) -> Vec<Laurent<num_rational::BigRational>> {
        field_factors(&to_q_matrix(&self.relations), self.gens)
    }

    pub fn fp_invariant_factors(&self, p: u64) -> Vec<Laurent<crate::laurent::Fp>> {
        field_factors(&to_fp_matrix(&self.relations, p), self.gens)
    }

    /// Δ_d: generator of the Q-shadow of the d-th elementary ideal, made
    /// primitive over Z and unit-normalized.
    pub fn alexander_polynomial(&self, d: usize) -> ZPoly {
        if d >= self.gens {
            return ZPoly::z_one();
        }
        let need = self.gens - d;
        let s = snf(&to_q_matrix(&self.relations));
        if s.rank < need {
            return ZPoly::z_zero();
        }
        let mut prod = Laurent::one(());
        for f in s.diagonal().iter().take(need) {
            prod = &prod * f;
        }
        prod.to_primitive_z().normalize_unit()
    }

    /// Δ₀, Δ₁, … up to and including the first that equals 1.
    pub fn alexander_polynomials(&self) -> Vec<ZPoly> {
        let mut out = Vec::new();
        for d in 0..=self.gens {
            let p = self.alexander_polynomial(d);
            let done = p.is_one();
            out.push(p);
            if done {
                break;
            }
        }
        out
    }

    pub fn battery(&self, primes: &[u64]) -> Battery {
        Battery {
            corank: self.corank().ok(),
            beta: self.lambda_rank(),
            t1: self.t1_invariants().iter().map(|d| d.to_string()).collect(),
            q: self.q_invariant_factors().iter().map(|f| f.to_text()).collect(),
            fp: primes
                .iter()
                .map(|&p| (p, self.fp_invariant_factors(p).iter().map(|f| f.to_text()).collect()))
                .collect(),
        }
    }

    pub fn report(&self, primes: &[u64]) -> InvariantReport {
        let corank = self.corank();
        let beta = self.lambda_rank();
        let battery = self.battery(primes);
        InvariantReport {
            gens: self.gens,
            relators: self.num_relations(),
            cokernel_free: corank.is_ok(),
            corank: corank.as_ref().ok().copied(),
            beta,
            tau: corank.ok().map(|c| c as i64 - beta as i64),
            t1_snf: battery.t1,
            q_factors: battery.q,
            fp_factors: battery.fp,
            alexander: self.alexander_polynomials().iter().map(|p| p.to_text()).collect(),
        }
    }

    /// Eliminates generator/relator pairs meeting in a unit entry and drops
    /// zero relators. The result presents an isomorphic module.
    pub fn simplify(&self) -> PresentedModule {
        let mut a = self.relations.clone();
        loop {
            let mut pick = None;
            'search: for j in 0..a.cols() {
                for i in 0..a.rows() {
                    if a[(i, j)].is_unit() {
                        pick = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = pick else { break };
            let inv = a[(i, j)].unit_inverse().expect("unit");
            for l in 0..a.cols() {
                if l != j && !a[(i, l)].is_zero() {
                    let f = -(&a[(i, l)] * &inv);
                    a.add_col_multiple(l, j, &f);
                }
            }
            let keep: Vec<usize> = (0..a.cols()).filter(|&l| l != j).collect();
            a = a.select_cols(&keep).remove_row(i);
        }
        let keep: Vec<usize> = (0..a.cols()).filter(|&l| a.col(l).iter().any(|x| !x.is_zero())).collect();
        let a = a.select_cols(&keep);
        PresentedModule { gens: a.rows(), relations: a }
    }

    pub fn battery_eq(&self, other: &PresentedModule, primes: &[u64]) -> bool {
        self.battery(primes) == other.battery(primes)
    }
}

/// Nonunit invariant factors in divisibility order, then one `0` per free summand.
fn field_factors<C: FieldCoeff>(m: &crate::laurent::Matrix<Laurent<C>>, gens: usize) -> Vec<Laurent<C>> {
    let s = snf(m);
    let ctx = m.ctx();
    let mut out: Vec<Laurent<C>> = s.diagonal().into_iter().filter(|d| !d.is_unit_e()).collect();
    out.extend(std::iter::repeat(Laurent::zero(ctx)).take(gens - s.rank));
    out
}

/// `p` is associate to `p(t⁻¹)`.
pub fn is_symmetric_poly(p: &ZPoly) -> bool {
    p.normalize_unit() == p.conjugate().normalize_unit()
}

/// The equivalence data used to compare modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Battery {
    pub corank: Option<usize>,
    pub beta: usize,
    pub t1: Vec<String>,
    pub q: Vec<String>,
    pub fp: BTreeMap<u64, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub gens: usize,
    pub relators: usize,
    pub cokernel_free: bool,
    pub corank: Option<usize>,
    pub beta: usize,
    pub tau: Option<i64>,
    pub t1_snf: Vec<String>,
    pub q_factors: Vec<String>,
    pub fp_factors: BTreeMap<u64, Vec<String>>,
    pub alexander: Vec<String>,
}

impl Battery {
    /// True when every shadow matches `Λ^r`.
    pub fn is_free_of_rank(&self, r: usize) -> bool {
        let zeros = |v: &Vec<String>| v.len() == r && v.iter().all(|f| f == "0");
        self.beta == r && self.corank == Some(r) && zeros(&self.t1) && zeros(&self.q) && self.fp.values().all(zeros)
    }
}

//! From a cokernel-free presentation matrix to a Wirtinger group and a
//! disk-arc presentation of a ribbon surface-link, plus genus bounds and
//! realizability verdicts.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{Arc, DiskArcPresentation};
use crate::ext::resolution::{matrix_text, SpanTester};
use crate::ext::search::is_nearly_symmetric;
use crate::ext::{dm, enumerate_submodules, ext, finite_structure, ExtError, FiniteModuleData, Limits, Verdict};
use crate::groups::GroupPresentation;
use crate::laurent::{snf, LambdaMatrix, ZPoly};
use crate::modules::{ModuleError, PresentedModule};
use crate::words::Word;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("partition has {got} parts but the module needs r = corank + 1 = {expected}")]
    PartitionLength { expected: usize, got: usize },
    #[error("requested genus {requested} is below the minimum {minimum} for this presentation")]
    PartitionInfeasible { requested: usize, minimum: usize },
    #[error("entry ({row}, {col}) is not divisible by t - 1 after base change")]
    DivisionFailed { row: usize, col: usize },
    #[error("column does not sum to zero")]
    PreconditionViolated,
    #[error("emitted group does not reproduce the transformed matrix")]
    RoundTripMismatch,
}

/// `U·B·V` with `(U·B·V)(1) = [[E_u, 0], [0, 0]]`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub b_prime: LambdaMatrix,
    pub u_mat: LambdaMatrix,
    pub v_mat: LambdaMatrix,
    pub u: usize,
}

pub fn base_change_at_one(b: &PresentedModule) -> Result<BaseChange, RealizeError> {
    b.corank()?;
    let a = b.relations();
    let s = snf(&a.eval_at_one());
    let u_mat = LambdaMatrix::from_ints(&s.u);
    let v_mat = LambdaMatrix::from_ints(&s.v);
    let mut b_prime = u_mat.mul(a).mul(&v_mat);
    let mut v_mat = v_mat;
    // make the pivots +1
    for (j, d) in s.diagonal().iter().enumerate() {
        if d.is_negative() {
            let m1 = ZPoly::z_int(-1);
            b_prime.scale_col(j, &m1);
            v_mat.scale_col(j, &m1);
        }
    }
    Ok(BaseChange { b_prime, u_mat, v_mat, u: s.rank })
}

/// Rows `0..=g_M` of the c-matrix: row 0 compensates so that each column
/// sums to zero.
pub fn extract_c(b_prime: &LambdaMatrix, u: usize) -> Result<Vec<Vec<ZPoly>>, RealizeError> {
    let (rows, cols) = (b_prime.rows(), b_prime.cols());
    let tm1 = ZPoly::t_minus_one();
    let mut out = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut col = vec![ZPoly::z_zero(); rows + 1];
        for i in 0..rows {
            let mut b = b_prime[(i, j)].clone();
            if i == j && j < u {
                b = &b - &ZPoly::z_one();
            }
            col[i + 1] = b.exact_div(&tm1).ok_or(RealizeError::DivisionFailed { row: i, col: j })?;
        }
        let sum = col[1..].iter().fold(ZPoly::z_zero(), |acc, c| &acc + c);
        col[0] = -&sum;
        out.push(col);
    }
    Ok(out)
}

/// A weight-zero word whose Fox row is `c`, a product of blocks
/// `x₀^k x_i x₀^{−k−1}` and their inverses.
pub fn synthesize_word(c: &[ZPoly]) -> Result<Word, RealizeError> {
    let total = c.iter().fold(ZPoly::z_zero(), |acc, p| &acc + p);
    if !total.is_zero() {
        return Err(RealizeError::PreconditionViolated);
    }
    let mut blocks = Vec::new();
    for (i, p) in c.iter().enumerate().skip(1) {
        for (k, a) in p.terms() {
            let block = Word::product([&Word::gen_pow(0, k), &Word::gen(i), &Word::gen_pow(0, -k - 1)]);
            let block = if a.is_negative() { block.inverse() } else { block };
            let reps = a.abs().to_u64().ok_or(RealizeError::PreconditionViolated)?;
            for _ in 0..reps {
                blocks.push(block.clone());
            }
        }
    }
    let w = Word::product(&blocks);
    debug_assert_eq!(w.fox_row(c.len()).ok().as_deref(), Some(c));
    Ok(w)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationInput {
    pub module: PresentedModule,
    pub partition: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationOutput {
    pub group: GroupPresentation,
    pub diskarc: DiskArcPresentation,
    pub u: usize,
    #[serde(with = "matrix_text")]
    pub u_mat: LambdaMatrix,
    #[serde(with = "matrix_text")]
    pub v_mat: LambdaMatrix,
    /// `U·B·V`, followed by one zero column per padding handle.
    #[serde(with = "matrix_text")]
    pub b_prime: LambdaMatrix,
    /// Generator each relator conjugates, `(from, to)`.
    pub attachments: Vec<(usize, usize)>,
    pub padding: usize,
    pub genera: Vec<usize>,
}

impl RealizationOutput {
    pub fn genus(&self) -> usize {
        self.genera.iter().sum()
    }
}

/// Smallest total genus `realize` reaches on this presentation.
pub fn natural_genus(b: &PresentedModule) -> Result<usize, RealizeError> {
    let corank = b.corank()?;
    Ok(b.num_relations() + corank - b.gens())
}

pub fn realize(input: &RealizationInput) -> Result<RealizationOutput, RealizeError> {
    let b = &input.module;
    let corank = b.corank()?;
    if input.partition.len() != corank + 1 {
        return Err(RealizeError::PartitionLength { expected: corank + 1, got: input.partition.len() });
    }
    let bc = base_change_at_one(b)?;
    let (gm, m, u) = (b.gens(), b.num_relations(), bc.u);
    let requested: usize = input.partition.iter().sum();
    if requested < m - u {
        return Err(RealizeError::PartitionInfeasible { requested, minimum: m - u });
    }
    let n = gm + 1;
    let c = extract_c(&bc.b_prime, u)?;
    // handle base for component k: D_0 for the first, D_{u+k} after
    let base = |k: usize| if k == 0 { 0 } else { u + k };
    let mut slots: Vec<usize> = Vec::with_capacity(requested);
    for (k, &g) in input.partition.iter().enumerate() {
        slots.extend(std::iter::repeat(base(k)).take(g));
    }
    let mut arcs = Vec::new();
    let mut attachments = Vec::new();
    for (j, col) in c.iter().enumerate() {
        let w = synthesize_word(col)?;
        let (from, to) = if j < u { (j + 1, 0) } else { (slots[j - u], slots[j - u]) };
        let through = w.letters().iter().map(|l| (l.gen, l.exp)).collect();
        arcs.push(Arc { from, to, through });
        attachments.push((from, to));
    }
    let padding = requested - (m - u);
    for &h in &slots[m - u..] {
        arcs.push(Arc { from: h, to: h, through: Vec::new() });
        attachments.push((h, h));
    }
    let diskarc = DiskArcPresentation::new(n, arcs).expect("arcs use existing disks");
    let group = diskarc.wirtinger();
    let b_prime = bc.b_prime.hstack(&LambdaMatrix::zeros((), gm, padding));
    if group.alexander_module(0).expect("n ≥ 1").relations() != &b_prime {
        return Err(RealizeError::RoundTripMismatch);
    }
    let genera = diskarc.genera();
    debug_assert_eq!(genera, input.partition);
    Ok(RealizationOutput { group, diskarc, u, u_mat: bc.u_mat, v_mat: bc.v_mat, b_prime, attachments, padding, genera })
}

/// The partition `(g, 0, …, 0)` with `g` the natural genus.
pub fn realize_default(b: &PresentedModule) -> Result<RealizationOutput, RealizeError> {
    let corank = b.corank()?;
    let mut partition = vec![0; corank + 1];
    partition[0] = natural_genus(b)?;
    realize(&RealizationInput { module: b.clone(), partition })
}

/// A presentation of `M` whose natural genus is pushed towards
/// `e(E²M) + τ(M)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Normalized {
    pub module: PresentedModule,
    pub achieved: usize,
    pub bound: usize,
    pub gap: bool,
}

fn drop_redundant_columns(m: &PresentedModule, lim: &Limits) -> Result<PresentedModule, RealizeError> {
    let mut a = m.relations().clone();
    let mut j = a.cols();
    while j > 0 {
        j -= 1;
        let others: Vec<usize> = (0..a.cols()).filter(|&l| l != j).collect();
        let rest = a.select_cols(&others);
        if rest.cols() > 0 && SpanTester::new(&rest, lim)?.contains(&a.col(j)) {
            a = rest;
        }
    }
    Ok(PresentedModule::new(m.gens(), a)?.simplify())
}

pub fn normalized_presentation(m: &PresentedModule, lim: &Limits) -> Result<Normalized, RealizeError> {
    let bound = ribbon_genus_lower_bound(m, lim)?;
    let mut best = m.simplify();
    let mut achieved = natural_genus(&best)?;
    if achieved > bound {
        let reduced = drop_redundant_columns(&best, lim)?;
        let g = natural_genus(&reduced)?;
        if g < achieved {
            best = reduced;
            achieved = g;
        }
    }
    Ok(Normalized { module: best, achieved, bound, gap: achieved != bound })
}

/// `e(E²M)`.
pub fn e2_generators(m: &PresentedModule, lim: &Limits) -> Result<usize, RealizeError> {
    let e2 = ext(m, 2, lim)?.module;
    let d = finite_structure(&e2, lim).map_err(|e| match e {
        ExtError::NotFinite => ExtError::FinitenessCertificationFailed,
        other => other,
    })?;
    Ok(d.min_generators())
}

/// `e(E²M) + τ(M)`.
pub fn ribbon_genus_lower_bound(m: &PresentedModule, lim: &Limits) -> Result<usize, RealizeError> {
    let tau = m.torsion_corank()?;
    Ok(e2_generators(m, lim)? + tau as usize)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneralBound {
    pub bound: usize,
    /// The submodule `D ⊆ DM` attaining the bound.
    pub witness: Option<FiniteModuleData>,
    /// Near-symmetry of the witness was not decided.
    pub witness_unknown: bool,
    /// The search was cut short and the bound fell back to `τ(M)`.
    pub fallback: bool,
}

/// Minimum of `⌈e(E²(M/D))/2⌉ + τ(M)` over nearly symmetric `D ⊆ DM`,
/// undecided candidates included.
pub fn general_genus_lower_bound(m: &PresentedModule, lim: &Limits) -> Result<GeneralBound, RealizeError> {
    let tau = m.torsion_corank()? as usize;
    let fallback = GeneralBound { bound: tau, witness: None, witness_unknown: false, fallback: true };
    let d = dm(m, lim)?;
    let subs = match enumerate_submodules(&d, lim) {
        Ok(s) => s,
        Err(ExtError::BoundExceeded { .. }) => return Ok(fallback),
        Err(e) => return Err(e.into()),
    };
    let mut best: Option<GeneralBound> = None;
    for s in subs {
        let verdict = match is_nearly_symmetric(&s.data, lim) {
            Ok(n) => n.verdict,
            Err(ExtError::BoundExceeded { .. }) => Verdict::Unknown,
            Err(e) => return Err(e.into()),
        };
        if verdict == Verdict::False {
            continue;
        }
        // E²(M/D) ≅ dual of DM/D
        let e = d.quotient(&s.gens).dual().min_generators();
        let bound = e.div_ceil(2) + tau;
        if best.as_ref().map_or(true, |b| bound < b.bound) {
            best = Some(GeneralBound {
                bound,
                witness: Some(s.data),
                witness_unknown: verdict == Verdict::Unknown,
                fallback: false,
            });
        }
    }
    Ok(best.unwrap_or(fallback))
}

/// Realizability verdicts for a module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub components: usize,
    pub genus: Option<usize>,
    pub cokernel_free: bool,
    pub corank: Option<usize>,
    pub beta: usize,
    pub tau: Option<i64>,
    pub e_e2: Option<usize>,
    pub dm_order: Option<String>,
    /// Cokernel-free of corank `r − 1`.
    pub surface_link_module: bool,
    /// Smallest ribbon genus, `e(E²M) + τ(M)`.
    pub min_ribbon_genus: Option<usize>,
    pub ribbon: Verdict,
    pub virtual_link: bool,
    /// `β = 0` and `DM = 0`, which forces `g = r − 1`.
    pub beta_zero_ribbon: bool,
    /// `β = 0` with `DM ≠ 0`: not the module of a classical link.
    pub not_classical: bool,
}

pub fn classify(m: &PresentedModule, r: Option<usize>, g: Option<usize>, lim: &Limits) -> Result<Classification, RealizeError> {
    let beta = m.lambda_rank();
    let corank = m.corank().ok();
    let components = r.or(corank.map(|c| c + 1)).unwrap_or(1);
    let mut out = Classification {
        components,
        genus: g,
        cokernel_free: corank.is_some(),
        corank,
        beta,
        tau: None,
        e_e2: None,
        dm_order: None,
        surface_link_module: false,
        min_ribbon_genus: None,
        ribbon: Verdict::False,
        virtual_link: false,
        beta_zero_ribbon: false,
        not_classical: false,
    };
    let Some(corank) = corank else { return Ok(out) };
    let tau = corank as i64 - beta as i64;
    let e = e2_generators(m, lim)?;
    let d = dm(m, lim)?;
    out.tau = Some(tau);
    out.e_e2 = Some(e);
    out.dm_order = Some(d.order().to_string());
    out.surface_link_module = corank + 1 == components;
    let min_g = e + tau as usize;
    out.min_ribbon_genus = Some(min_g);
    out.ribbon = match (out.surface_link_module, g) {
        (false, _) => Verdict::False,
        (true, Some(g)) => Verdict::from_bool(g >= min_g),
        (true, None) => Verdict::True,
    };
    out.virtual_link = out.surface_link_module && e <= 1 + beta;
    out.beta_zero_ribbon = out.surface_link_module && beta == 0 && d.is_zero();
    out.not_classical = beta == 0 && !d.is_zero();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::DEFAULT_PRIMES;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn base_change_examples() {
        let b = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]);
        let bc = base_change_at_one(&b).unwrap();
        assert_eq!(bc.u, 1);
        assert_eq!(bc.b_prime.eval_at_one(), crate::laurent::IntMatrix::from_i64_rows(&[vec![1, 0]]));
        let k = PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])]);
        assert_eq!(base_change_at_one(&k).unwrap().u, 0);
        assert_eq!(base_change_at_one(&PresentedModule::free(2)).unwrap().u, 0);
        assert!(base_change_at_one(&PresentedModule::cyclic(&[ZPoly::z_int(2)])).is_err());
    }

    #[test]
    fn word_synthesis() {
        let one = ZPoly::z_one();
        let w = synthesize_word(&[-&one, one.clone()]).unwrap();
        assert_eq!(w.to_text(), "x1 x0^-1");
        let t = z(1, &[1]);
        let w = synthesize_word(&[ZPoly::z_zero(), t.clone(), -&t]).unwrap();
        assert_eq!(w.to_text(), "x0 x1 x2^-1 x0^-1");
        assert!(synthesize_word(&[ZPoly::z_zero(), ZPoly::z_zero()]).unwrap().is_empty());
        assert_eq!(synthesize_word(&[one.clone(), one]), Err(RealizeError::PreconditionViolated));
    }

    #[test]
    fn realization_examples() {
        let b = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]);
        let out = realize(&RealizationInput { module: b.clone(), partition: vec![1] }).unwrap();
        assert_eq!((out.group.gens(), out.group.relators().len(), out.genus()), (2, 2, 1));
        assert!(out.group.alexander_module(0).unwrap().battery_eq(&b, &DEFAULT_PRIMES));
        assert_eq!(out.group.abelianization_rank(), 1);
        assert_eq!(
            realize(&RealizationInput { module: b, partition: vec![0] }).unwrap_err(),
            RealizeError::PartitionInfeasible { requested: 0, minimum: 1 }
        );
        let free = realize(&RealizationInput { module: PresentedModule::free(2), partition: vec![0, 0, 0] }).unwrap();
        assert_eq!((free.diskarc.disks(), free.diskarc.arcs().len()), (3, 0));
        let k = PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])]);
        let out = realize(&RealizationInput { module: k.clone(), partition: vec![1, 1] }).unwrap();
        assert_eq!(out.genera, vec![1, 1]);
        assert!(out.group.alexander_module(0).unwrap().battery_eq(&k, &DEFAULT_PRIMES));
        let padded = realize(&RealizationInput { module: k.clone(), partition: vec![2, 1] }).unwrap();
        assert_eq!((padded.padding, padded.genera.clone()), (1, vec![2, 1]));
        let other = realize(&RealizationInput { module: k.clone(), partition: vec![0, 2] }).unwrap();
        assert!(other.group.alexander_module(0).unwrap().battery_eq(&k, &DEFAULT_PRIMES));
    }

    #[test]
    fn bounds() {
        let a = PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]);
        assert_eq!(ribbon_genus_lower_bound(&a, &lim()).unwrap(), 1);
        assert_eq!(general_genus_lower_bound(&a, &lim()).unwrap().bound, 0);
        let k = PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])]);
        assert_eq!(ribbon_genus_lower_bound(&k, &lim()).unwrap(), 2);
        assert_eq!(ribbon_genus_lower_bound(&PresentedModule::free(2), &lim()).unwrap(), 0);
        assert_eq!(general_genus_lower_bound(&PresentedModule::free(2), &lim()).unwrap().bound, 0);
        let n = normalized_presentation(&a, &lim()).unwrap();
        assert_eq!((n.achieved, n.gap), (1, false));
    }

    #[test]
    fn classification() {
        let k = PresentedModule::cyclic(&[z(0, &[1, -2, 1]), z(0, &[-2, 2])]);
        let c = classify(&k, Some(2), None, &lim()).unwrap();
        assert!(c.virtual_link && c.not_classical && c.surface_link_module);
        assert_eq!(c.min_ribbon_genus, Some(2));
        let b = PresentedModule::cyclic(&[z(0, &[-1, 2]), ZPoly::z_int(5)]).power(2);
        let c = classify(&b, Some(1), None, &lim()).unwrap();
        assert!(!c.virtual_link);
        let f = classify(&PresentedModule::free(1), None, Some(0), &lim()).unwrap();
        assert!(f.virtual_link && f.surface_link_module && f.ribbon.is_true() && !f.beta_zero_ribbon);
        let z = classify(&PresentedModule::zero(), Some(1), Some(0), &lim()).unwrap();
        assert!(z.beta_zero_ribbon && !z.not_classical);
        let t = classify(&PresentedModule::cyclic(&[ZPoly::z_int(2)]), None, None, &lim()).unwrap();
        assert!(!t.cokernel_free && !t.surface_link_module);
    }
}

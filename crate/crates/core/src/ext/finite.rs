//! Finite Λ-modules as finite abelian groups `⊕ Z/d_i` with a t-action.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::groebner::{clear_columns, lead, saturate, UPoly, UVec};
use super::{ExtError, Limits};
use crate::laurent::{snf, Euclidean, FpPoly, IntMatrix, LambdaMatrix, Matrix, ZPoly};
use crate::modules::PresentedModule;

pub type Element = Vec<u64>;

/// `⊕ Z/moduli[i]` with `t` acting by `t_action`: entry `(i, j)` is the
/// image of the `j`-th basis vector in the `i`-th summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteModuleData {
    moduli: Vec<u64>,
    t_action: Vec<Vec<u64>>,
}

/// Invariants used to compare finite modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteBattery {
    pub order: String,
    pub abelian: Vec<u64>,
    /// For each prime: invariant factors of `tI − T` on `p^k D / p^{k+1} D`.
    pub layers: BTreeMap<u64, Vec<Vec<String>>>,
}

fn to_u64(x: &BigInt) -> Result<u64, ExtError> {
    x.to_u64().ok_or(ExtError::Overflow)
}

fn int_matrix(rows: usize, cols: Vec<Vec<BigInt>>) -> IntMatrix {
    Matrix::from_cols((), rows, cols)
}

impl FiniteModuleData {
    pub fn zero() -> Self {
        FiniteModuleData { moduli: Vec::new(), t_action: Vec::new() }
    }

    /// `Z/n` with `t` acting as multiplication by `t`.
    pub fn cyclic(n: u64, t: u64) -> Self {
        if n == 1 {
            return FiniteModuleData::zero();
        }
        FiniteModuleData { moduli: vec![n], t_action: vec![vec![t % n]] }
    }

    /// `Z^dim / span(relations)` with `t` acting by the integer matrix `t`,
    /// which must preserve the relation lattice. Also returns the matrix
    /// sending old coordinates to new ones.
    pub fn from_lattice(dim: usize, relations: &IntMatrix, t: &IntMatrix) -> Result<(Self, IntMatrix), ExtError> {
        if dim == 0 {
            return Ok((FiniteModuleData::zero(), IntMatrix::zeros((), 0, 0)));
        }
        let s = snf(relations);
        if s.rank < dim {
            return Err(ExtError::NotFinite);
        }
        let diag = s.diagonal();
        let keep: Vec<usize> = (0..dim).filter(|&i| !diag[i].is_one()).collect();
        let moduli: Vec<u64> = keep.iter().map(|&i| to_u64(&diag[i])).collect::<Result<_, _>>()?;
        let tt = s.u.mul(t).mul(&s.u_inv);
        let mut t_action = vec![vec![0u64; keep.len()]; keep.len()];
        for (a, &i) in keep.iter().enumerate() {
            let d = &diag[i];
            for (b, &j) in keep.iter().enumerate() {
                t_action[a][b] = to_u64(&tt[(i, j)].mod_floor(d))?;
            }
        }
        let map = s.u.select_rows(&keep);
        Ok((FiniteModuleData { moduli, t_action }, map))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn t_action(&self) -> &[Vec<u64>] {
        &self.t_action
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_zero(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &d| acc.lcm(&d))
    }

    pub fn prime_support(&self) -> Vec<u64> {
        let mut ps = Vec::new();
        for &d in &self.moduli {
            let mut n = d;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    ps.push(p);
                    while n % p == 0 {
                        n /= p;
                    }
                }
                p += 1;
            }
            if n > 1 {
                ps.push(n);
            }
        }
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn apply_matrix(&self, m: &[Vec<u64>], x: &[u64]) -> Element {
        (0..self.rank())
            .map(|i| {
                let d = self.moduli[i] as u128;
                let mut acc = 0u128;
                for (j, &xj) in x.iter().enumerate() {
                    acc = (acc + (m[i][j] as u128 % d) * (xj as u128 % d)) % d;
                }
                acc as u64
            })
            .collect()
    }

    pub fn apply_t(&self, x: &[u64]) -> Element {
        self.apply_matrix(&self.t_action, x)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        (0..self.rank()).map(|i| ((x[i] as u128 + y[i] as u128) % self.moduli[i] as u128) as u64).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        (0..self.rank()).map(|i| (self.moduli[i] - x[i] % self.moduli[i]) % self.moduli[i]).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Element {
        self.add(x, &self.neg(y))
    }

    pub fn zero_element(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e[i] = 1;
        e
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        (0..self.rank()).fold(1u64, |acc, i| {
            let d = self.moduli[i];
            acc.lcm(&(d / d.gcd(&x[i])))
        })
    }

    pub fn index_of(&self, x: &[u64]) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.rank()).rev() {
            idx = idx * self.moduli[i] + x[i];
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Element {
        let mut x = Vec::with_capacity(self.rank());
        for &d in &self.moduli {
            x.push(idx % d);
            idx /= d;
        }
        x
    }

    pub fn check_enumerable(&self, lim: &Limits) -> Result<u64, ExtError> {
        let n = self.order();
        if n > lim.max_order as u128 {
            return Err(ExtError::BoundExceeded { what: "finite module order", limit: lim.max_order });
        }
        Ok(n as u64)
    }

    fn lift_t(&self) -> IntMatrix {
        let n = self.rank();
        IntMatrix::from_rows(
            (),
            n,
            (0..n).map(|i| (0..n).map(|j| BigInt::from(self.t_action[i][j])).collect()).collect(),
        )
    }

    fn diag_lattice(&self) -> IntMatrix {
        let n = self.rank();
        int_matrix(
            n,
            (0..n).map(|j| (0..n).map(|i| if i == j { BigInt::from(self.moduli[i]) } else { BigInt::zero() }).collect()).collect(),
        )
    }

    /// Matrix of `t⁻¹`.
    pub fn t_inverse(&self) -> Vec<Vec<u64>> {
        let n = self.rank();
        let system = self.lift_t().hstack(&self.diag_lattice());
        let s = snf(&system);
        let mut inv = vec![vec![0u64; n]; n];
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let x = s.solve(&e).expect("t acts invertibly on a finite module");
            for (i, row) in inv.iter_mut().enumerate() {
                row[j] = x[i].mod_floor(&BigInt::from(self.moduli[i])).to_u64().unwrap();
            }
        }
        inv
    }

    /// The character group `hom(D, Q/Z)` with `t` acting by `χ ↦ χ∘t⁻¹`.
    pub fn dual(&self) -> FiniteModuleData {
        let n = self.rank();
        let inv = self.t_inverse();
        let mut t = vec![vec![0u64; n]; n];
        for j in 0..n {
            for k in 0..n {
                let (dj, dk) = (self.moduli[j] as u128, self.moduli[k] as u128);
                let val = inv[j][k] as u128 * dk;
                debug_assert_eq!(val % dj, 0);
                t[k][j] = ((val / dj) % dk) as u64;
            }
        }
        FiniteModuleData { moduli: self.moduli.clone(), t_action: t }
    }

    /// Invariant factors of `tI − T` on `p^k D / p^{k+1} D`, for `k = 0, 1, …`.
    pub fn layers(&self, p: u64) -> Vec<Vec<FpPoly>> {
        let mut out = Vec::new();
        let mut pk = p as u128;
        loop {
            let idx: Vec<usize> = (0..self.rank()).filter(|&i| self.moduli[i] as u128 % pk == 0).collect();
            if idx.is_empty() {
                return out;
            }
            let m = idx.len();
            let mut rows = Vec::with_capacity(m);
            for &i in &idx {
                let row: Vec<FpPoly> = idx
                    .iter()
                    .map(|&j| {
                        let c = FpPoly::from_int(p, -((self.t_action[i][j] % p) as i64));
                        if i == j {
                            &c + &FpPoly::t(p)
                        } else {
                            c
                        }
                    })
                    .collect();
                rows.push(row);
            }
            let s = snf(&Matrix::from_rows(p, m, rows));
            out.push(s.diagonal().into_iter().filter(|d| !d.is_unit_e()).collect());
            pk *= p as u128;
        }
    }

    /// Minimal number of Λ-generators: the maximum over primes of the number
    /// of nonunit invariant factors on `D/pD`.
    pub fn min_generators(&self) -> usize {
        self.prime_support()
            .into_iter()
            .map(|p| self.layers(p).first().map_or(0, Vec::len))
            .max()
            .unwrap_or(0)
    }

    pub fn battery(&self) -> FiniteBattery {
        FiniteBattery {
            order: self.order().to_string(),
            abelian: self.moduli.clone(),
            layers: self
                .prime_support()
                .into_iter()
                .map(|p| (p, self.layers(p).iter().map(|l| l.iter().map(|f| f.to_text()).collect()).collect()))
                .collect(),
        }
    }

    /// A Λ-presentation: `d_i e_i = 0` and `t e_j = Σ T_ij e_i`.
    pub fn to_presented(&self) -> PresentedModule {
        let n = self.rank();
        let mut cols = Vec::new();
        for i in 0..n {
            let mut c = vec![ZPoly::z_zero(); n];
            c[i] = ZPoly::z_int(self.moduli[i] as i64);
            cols.push(c);
        }
        for j in 0..n {
            let mut c: Vec<ZPoly> = (0..n).map(|i| ZPoly::z_int(-(self.t_action[i][j] as i64))).collect();
            c[j] = &c[j] + &ZPoly::z(1, &[1]);
            cols.push(c);
        }
        PresentedModule::from_columns(n, cols)
    }

    /// Integer lifts of elements as columns.
    fn lifts(&self, elems: &[Element]) -> IntMatrix {
        int_matrix(self.rank(), elems.iter().map(|e| e.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// The t-stable subgroup generated over Z by `gens`.
    pub fn submodule(&self, gens: &[Element]) -> FiniteModuleData {
        let n = self.rank();
        let k = gens.len();
        if k == 0 {
            return FiniteModuleData::zero();
        }
        let h = self.lifts(gens);
        let system = h.hstack(&self.diag_lattice());
        let s = snf(&system);
        let kernel: Vec<Vec<BigInt>> = s.kernel_basis().into_iter().map(|v| v[..k].to_vec()).collect();
        let rel = int_matrix(k, kernel);
        let th = self.lift_t().mul(&h);
        let mut action = Vec::with_capacity(k);
        for j in 0..k {
            let x = s.solve(&th.col(j)).expect("submodule is t-stable");
            action.push(x[..k].to_vec());
        }
        let _ = n;
        let (data, _) = FiniteModuleData::from_lattice(k, &rel, &int_matrix(k, action)).expect("subgroup is finite");
        data
    }

    /// `D / ⟨gens⟩` for a t-stable subgroup.
    pub fn quotient(&self, gens: &[Element]) -> FiniteModuleData {
        let rel = self.diag_lattice().hstack(&self.lifts(gens));
        let (data, _) = FiniteModuleData::from_lattice(self.rank(), &rel, &self.lift_t()).expect("quotient is finite");
        data
    }

    pub fn direct_sum(&self, other: &FiniteModuleData) -> FiniteModuleData {
        let (a, b) = (self.rank(), other.rank());
        let mut t = vec![vec![0u64; a + b]; a + b];
        for i in 0..a {
            t[i][..a].copy_from_slice(&self.t_action[i]);
        }
        for i in 0..b {
            t[a + i][a..].copy_from_slice(&other.t_action[i]);
        }
        let mut moduli = self.moduli.clone();
        moduli.extend(&other.moduli);
        // renormalize so that equal modules have equal data
        let raw = FiniteModuleData { moduli, t_action: t };
        raw.renormalized()
    }

    pub fn power(&self, n: usize) -> FiniteModuleData {
        (0..n).fold(FiniteModuleData::zero(), |acc, _| acc.direct_sum(self))
    }

    fn renormalized(&self) -> FiniteModuleData {
        let (d, _) = FiniteModuleData::from_lattice(self.rank(), &self.diag_lattice(), &self.lift_t()).expect("finite");
        d
    }

    /// Largest power of `t − 1` needed: returns `(D_{t−1}, D_c)` as
    /// element sets with their module data.
    pub fn split_t_minus_one(&self, lim: &Limits) -> Result<(Submodule, Submodule), ExtError> {
        let order = self.check_enumerable(lim)?;
        let s = |x: &[u64]| self.sub(&self.apply_t(x), x);
        let mut image: Vec<u64> = (0..order).collect();
        let mut steps = 0;
        loop {
            let mut next: Vec<u64> = image.iter().map(|&i| self.index_of(&s(&self.element_at(i)))).collect();
            next.sort_unstable();
            next.dedup();
            if next.len() == image.len() {
                break;
            }
            image = next;
            steps += 1;
        }
        let nil: Vec<u64> = (0..order)
            .filter(|&i| {
                let mut x = self.element_at(i);
                for _ in 0..steps {
                    x = s(&x);
                }
                x.iter().all(|&c| c == 0)
            })
            .collect();
        let p = Submodule::from_members(self, nil);
        let c = Submodule::from_members(self, image);
        debug_assert_eq!(p.data.order() * c.data.order(), self.order());
        Ok((p, c))
    }
}

/// A submodule of a finite module, with its elements and generators in the
/// ambient coordinates.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub members: Vec<u64>,
    pub gens: Vec<Element>,
    pub data: FiniteModuleData,
}

impl Submodule {
    /// `members` must be a sorted list of indices of a t-stable subgroup.
    pub fn from_members(ambient: &FiniteModuleData, members: Vec<u64>) -> Submodule {
        let gens = z_generators(ambient, &members);
        let data = ambient.submodule(&gens);
        Submodule { members, gens, data }
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }
}

/// Greedy Z-generators of a subgroup given by its sorted member indices.
pub fn z_generators(d: &FiniteModuleData, members: &[u64]) -> Vec<Element> {
    let mut gens: Vec<Element> = Vec::new();
    let mut span: std::collections::BTreeSet<u64> = [d.index_of(&d.zero_element())].into_iter().collect();
    for &m in members {
        if span.contains(&m) {
            continue;
        }
        let g = d.element_at(m);
        let mut frontier: Vec<u64> = span.iter().copied().collect();
        while let Some(i) = frontier.pop() {
            let y = d.index_of(&d.add(&d.element_at(i), &g));
            if span.insert(y) {
                frontier.push(y);
            }
        }
        gens.push(g);
    }
    gens
}

/// Structure of a presented module that is finite.
pub fn finite_structure(m: &PresentedModule, lim: &Limits) -> Result<FiniteModuleData, ExtError> {
    finite_structure_with_gens(m, lim).map(|(d, _)| d)
}

/// As `finite_structure`, also returning the images of the module
/// generators.
pub fn finite_structure_with_gens(m: &PresentedModule, lim: &Limits) -> Result<(FiniteModuleData, Vec<Element>), ExtError> {
    let r = m.gens();
    if r == 0 {
        return Ok((FiniteModuleData::zero(), Vec::new()));
    }
    let (cols, _) = clear_columns(m.relations());
    let gb = saturate(r, cols, lim)?;
    let monics: Vec<UVec> = gb.monic_per_position().ok_or(ExtError::NotFinite)?.into_iter().cloned().collect();
    let degs: Vec<usize> = monics.iter().map(|g| lead(g).unwrap().1).collect();
    let mut offset = vec![0usize; r + 1];
    for i in 0..r {
        offset[i + 1] = offset[i] + degs[i];
    }
    let dim = offset[r];
    let rho = |mut v: UVec| -> Vec<BigInt> {
        for pos in 0..r {
            while let Some(d) = v[pos].deg() {
                if d < degs[pos] {
                    break;
                }
                let c = v[pos].lc().unwrap().clone();
                let g = &monics[pos];
                let shift = d - degs[pos];
                for (a, b) in v.iter_mut().zip(g) {
                    *a = a.sub(&b.scale(&c).shift(shift));
                }
            }
        }
        let mut out = vec![BigInt::zero(); dim];
        for pos in 0..r {
            for j in 0..degs[pos] {
                out[offset[pos] + j] = v[pos].coeff(j);
            }
        }
        out
    };
    let unit = |pos: usize, deg: usize| -> UVec {
        (0..r).map(|k| if k == pos { UPoly::monomial(BigInt::one(), deg) } else { UPoly::zero() }).collect()
    };
    let mut tcols = Vec::with_capacity(dim);
    for pos in 0..r {
        for j in 0..degs[pos] {
            tcols.push(rho(unit(pos, j + 1)));
        }
    }
    let t = int_matrix(dim, tcols);
    let gen_coords: Vec<Vec<BigInt>> = (0..r).map(|pos| rho(unit(pos, 0))).collect();
    if dim == 0 {
        return Ok((FiniteModuleData::zero(), vec![Vec::new(); r]));
    }
    let mut rel_cols: Vec<Vec<BigInt>> = gb.basis().iter().map(|g| rho(g.clone())).collect();
    loop {
        let s = snf(&int_matrix(dim, rel_cols.clone()));
        let basis = s.image_basis();
        let moved: Vec<Vec<BigInt>> = basis.iter().map(|b| t.mul_vec(b)).collect();
        if moved.iter().all(|v| s.solve(v).is_some()) {
            rel_cols = basis;
            break;
        }
        rel_cols = basis;
        rel_cols.extend(moved);
    }
    let (data, map) = FiniteModuleData::from_lattice(dim, &int_matrix(dim, rel_cols), &t)?;
    let images = gen_coords
        .iter()
        .map(|c| {
            let y = map.mul_vec(c);
            y.iter().zip(data.moduli()).map(|(v, &d)| v.mod_floor(&BigInt::from(d)).to_u64().unwrap()).collect()
        })
        .collect();
    Ok((data, images))
}

/// Characteristic polynomial factor of a lift of the t-action, with the
/// powers of `t` removed; it annihilates the module.
pub fn annihilating_poly(d: &FiniteModuleData) -> ZPoly {
    let n = d.rank();
    if n == 0 {
        return ZPoly::z_one();
    }
    let m = LambdaMatrix::from_rows(
        (),
        n,
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = ZPoly::z_int(-(d.t_action()[i][j] as i64));
                        if i == j {
                            &c + &ZPoly::z(1, &[1])
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect(),
    );
    let s = snf(&crate::laurent::to_q_matrix(&m));
    let mut prod = crate::laurent::QPoly::one(());
    for f in s.diagonal() {
        prod = &prod * &f;
    }
    let z = prod.to_primitive_z();
    if z.leading_coeff().is_some_and(|c| c.is_negative()) {
        -z
    } else {
        z
    }
}

/// Sanity check used by tests: the t-action is a bijection preserving
/// the group law on every basis vector.
pub fn t_is_invertible(d: &FiniteModuleData) -> bool {
    let inv = d.t_inverse();
    (0..d.rank()).all(|j| {
        let e = d.basis_element(j);
        d.apply_matrix(&inv, &d.apply_t(&e)) == e
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn structure_examples() {
        let d = finite_structure(&PresentedModule::cyclic(&[z(0, &[1, 1]), ZPoly::z_int(3)]), &lim()).unwrap();
        assert_eq!((d.order(), d.t_action()[0][0]), (3, 2));
        let d = finite_structure(&PresentedModule::cyclic(&[z(0, &[-1, 2]), ZPoly::z_int(5)]), &lim()).unwrap();
        assert_eq!((d.order(), d.t_action()[0][0]), (5, 3));
        assert_eq!(finite_structure(&PresentedModule::zero(), &lim()).unwrap().order(), 1);
        assert_eq!(
            finite_structure(&PresentedModule::cyclic(&[ZPoly::t_minus_one()]), &lim()),
            Err(ExtError::NotFinite)
        );
        assert_eq!(finite_structure(&PresentedModule::cyclic(&[z(0, &[-2, 1])]), &lim()), Err(ExtError::NotFinite));
    }

    #[test]
    fn generator_counts() {
        assert_eq!(FiniteModuleData::cyclic(3, 2).min_generators(), 1);
        let a = FiniteModuleData::cyclic(5, 3);
        assert_eq!(a.power(2).min_generators(), 2);
        assert_eq!(a.power(3).dual().min_generators(), 3);
        let s = FiniteModuleData::cyclic(2, 1).direct_sum(&FiniteModuleData::cyclic(3, 2));
        assert_eq!(s.moduli(), &[6]);
        assert_eq!(s.min_generators(), 1);
    }

    #[test]
    fn duals() {
        let a = FiniteModuleData::cyclic(3, 2);
        assert_eq!(a.dual().battery(), a.battery());
        let b = FiniteModuleData::cyclic(5, 3);
        assert_eq!(b.dual(), FiniteModuleData::cyclic(5, 2));
        assert!(FiniteModuleData::zero().dual().is_zero());
        let m = finite_structure(&PresentedModule::cyclic(&[z(0, &[1, 1, 1]), ZPoly::z_int(4)]), &lim()).unwrap();
        assert_eq!(m.dual().order(), m.order());
        assert_eq!(m.dual().dual().battery(), m.battery());
        assert!(t_is_invertible(&m));
    }

    #[test]
    fn splitting() {
        let s = FiniteModuleData::cyclic(2, 1).direct_sum(&FiniteModuleData::cyclic(3, 2));
        let (p, c) = s.split_t_minus_one(&lim()).unwrap();
        assert_eq!((p.order(), c.order()), (2, 3));
        let (p, c) = FiniteModuleData::cyclic(5, 3).split_t_minus_one(&lim()).unwrap();
        assert_eq!((p.order(), c.order()), (1, 5));
        let (p, c) = FiniteModuleData::zero().split_t_minus_one(&lim()).unwrap();
        assert_eq!((p.order(), c.order()), (1, 1));
    }

    #[test]
    fn presentation_round_trip() {
        let m = finite_structure(&PresentedModule::cyclic(&[z(0, &[1, 0, 1]), ZPoly::z_int(6)]), &lim()).unwrap();
        let back = finite_structure(&m.to_presented(), &lim()).unwrap();
        assert_eq!(back.battery(), m.battery());
        let f = annihilating_poly(&m);
        let d = finite_structure(&PresentedModule::cyclic(&[f, ZPoly::z_int(m.exponent() as i64)]), &lim()).unwrap();
        assert!(d.order() >= m.order());
    }
}

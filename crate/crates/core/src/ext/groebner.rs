//! Strong Gröbner bases for submodules of Z[t]^r.
//!
//! Monomials `t^a e_i` are ordered position-over-term: a smaller position
//! index ranks higher, then higher degree. Reduction is strong: a term
//! `c t^a e_i` is reducible by `g` when `g` leads at position `i` with
//! degree at most `a` and its leading coefficient divides `c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExtError, Limits};
use crate::laurent::{LambdaMatrix, ZPoly};

/// Dense polynomial in Z[t]; `c[k]` is the coefficient of `t^k`, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(v: BigInt) -> Self {
        UPoly::from_vec(vec![v])
    }

    pub fn monomial(v: BigInt, deg: usize) -> Self {
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = v;
        UPoly::from_vec(c)
    }

    pub fn from_vec(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_vec((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    /// `self - f·t^shift·o` in place.
    fn sub_scaled(&mut self, f: &BigInt, shift: usize, o: &UPoly) {
        if o.is_zero() || f.is_zero() {
            return;
        }
        if self.c.len() < o.c.len() + shift {
            self.c.resize(o.c.len() + shift, BigInt::zero());
        }
        for (k, v) in o.c.iter().enumerate() {
            self.c[k + shift] -= f * v;
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn scale(&self, f: &BigInt) -> UPoly {
        if f.is_zero() {
            return UPoly::zero();
        }
        UPoly { c: self.c.iter().map(|x| x * f).collect() }
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::from_vec(c)
    }

    /// Requires no negative exponents.
    pub fn from_laurent(p: &ZPoly) -> UPoly {
        let Some(lo) = p.min_exp() else { return UPoly::zero() };
        assert!(lo >= 0, "negative exponent in Z[t] conversion");
        let hi = p.max_exp().unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); hi + 1];
        for (e, v) in p.terms() {
            c[e as usize] = v.clone();
        }
        UPoly::from_vec(c)
    }

    pub fn to_laurent(&self) -> ZPoly {
        ZPoly::from_terms((), self.c.iter().enumerate().map(|(k, v)| (k as i64, v.clone())))
    }
}

pub type UVec = Vec<UPoly>;

/// Leading position, degree and coefficient.
pub fn lead(v: &[UPoly]) -> Option<(usize, usize, &BigInt)> {
    v.iter().enumerate().find(|(_, p)| !p.is_zero()).map(|(i, p)| (i, p.deg().unwrap(), p.lc().unwrap()))
}

fn vec_degree(v: &[UPoly]) -> usize {
    v.iter().filter_map(UPoly::deg).max().unwrap_or(0)
}

fn sub_scaled_vec(v: &mut [UPoly], f: &BigInt, shift: usize, g: &[UPoly]) {
    for (a, b) in v.iter_mut().zip(g) {
        a.sub_scaled(f, shift, b);
    }
}

fn scale_shift_vec(v: &[UPoly], f: &BigInt, shift: usize) -> UVec {
    v.iter().map(|p| p.scale(f).shift(shift)).collect()
}

fn add_vec(a: &[UPoly], b: &[UPoly]) -> UVec {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn normalize_sign(v: &mut UVec) {
    if lead(v).is_some_and(|(_, _, c)| c.is_negative()) {
        for p in v.iter_mut() {
            *p = p.neg();
        }
    }
}

/// A strong Gröbner basis of a submodule of Z[t]^rank.
#[derive(Clone, Debug)]
pub struct Groebner {
    rank: usize,
    basis: Vec<UVec>,
}

impl Groebner {
    pub fn new(rank: usize, gens: Vec<UVec>, lim: &Limits) -> Result<Self, ExtError> {
        let mut g = Groebner { rank, basis: Vec::new() };
        let mut pending: Vec<UVec> = gens;
        for v in &pending {
            assert_eq!(v.len(), rank, "generator length mismatch");
        }
        // Pairs are processed as they arise; new elements are fully reduced first.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        loop {
            while let Some(v) = pending.pop() {
                let mut r = g.top_reduce(v);
                if lead(&r).is_none() {
                    continue;
                }
                normalize_sign(&mut r);
                if vec_degree(&r) > lim.degree_cap {
                    return Err(ExtError::DegreeCap { cap: lim.degree_cap });
                }
                let idx = g.basis.len();
                let pos = lead(&r).unwrap().0;
                for (j, b) in g.basis.iter().enumerate() {
                    if lead(b).is_some_and(|l| l.0 == pos) {
                        pairs.push((j, idx));
                    }
                }
                g.basis.push(r);
            }
            let Some((i, j)) = pairs.pop() else { break };
            let (a, b) = (&g.basis[i], &g.basis[j]);
            let (_, da, ca) = lead(a).unwrap();
            let (_, db, cb) = lead(b).unwrap();
            let l = da.max(db);
            let lcm = ca.lcm(cb);
            let s = add_vec(
                &scale_shift_vec(a, &(&lcm / ca), l - da),
                &scale_shift_vec(b, &(-(&lcm / cb)), l - db),
            );
            pending.push(s);
            if !(ca.is_one() || cb.is_one() || (cb % ca).is_zero() || (ca % cb).is_zero()) {
                let e = ca.extended_gcd(cb);
                let gp = add_vec(&scale_shift_vec(a, &e.x, l - da), &scale_shift_vec(b, &e.y, l - db));
                pending.push(gp);
            }
        }
        g.interreduce();
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[UVec] {
        &self.basis
    }

    fn reducer(&self, pos: usize, deg: usize, c: &BigInt) -> Option<&UVec> {
        self.basis.iter().find(|g| {
            let (p, d, lc) = lead(g).unwrap();
            p == pos && d <= deg && (c % lc).is_zero()
        })
    }

    /// Reduces until the leading term is irreducible.
    pub fn top_reduce(&self, mut v: UVec) -> UVec {
        while let Some((pos, deg, c)) = lead(&v) {
            let c = c.clone();
            let Some(g) = self.reducer(pos, deg, &c) else { break };
            let (_, dg, lg) = lead(g).unwrap();
            let f = &c / lg;
            let g = g.clone();
            sub_scaled_vec(&mut v, &f, deg - dg, &g);
        }
        v
    }

    /// Reduces every term, highest monomials first.
    pub fn reduce(&self, mut v: UVec) -> UVec {
        for pos in 0..self.rank {
            let mut deg = match v[pos].deg() {
                Some(d) => d as i64,
                None => continue,
            };
            while deg >= 0 {
                let c = v[pos].coeff(deg as usize);
                if !c.is_zero() {
                    if let Some(g) = self.reducer(pos, deg as usize, &c) {
                        let (_, dg, lg) = lead(g).unwrap();
                        let f = &c / lg;
                        let g = g.clone();
                        sub_scaled_vec(&mut v, &f, deg as usize - dg, &g);
                        continue;
                    }
                }
                deg -= 1;
            }
        }
        v
    }

    pub fn contains(&self, v: &[UPoly]) -> bool {
        lead(&self.top_reduce(v.to_vec())).is_none()
    }

    fn interreduce(&mut self) {
        let mut keep: Vec<UVec> = Vec::new();
        let mut all = std::mem::take(&mut self.basis);
        all.sort_by_key(|v| {
            let (p, d, c) = lead(v).unwrap();
            (p, d, c.magnitude().clone())
        });
        for v in all {
            let (p, d, c) = lead(&v).unwrap();
            let redundant = keep.iter().any(|g| {
                let (pg, dg, cg) = lead(g).unwrap();
                pg == p && dg <= d && (c % cg).is_zero()
            });
            if !redundant {
                keep.push(v);
            }
        }
        self.basis = keep;
        let snapshot = self.clone();
        for k in 0..self.basis.len() {
            let v = self.basis[k].clone();
            let (p, d, c) = lead(&v).unwrap();
            let (p, d, c) = (p, d, c.clone());
            // reduce the tail only; the leading term stays
            let mut others = snapshot.clone();
            others.basis.remove(k);
            let mut tail = v.clone();
            tail[p].sub_scaled(&BigInt::one(), 0, &UPoly::monomial(c.clone(), d));
            let tail = others.reduce(tail);
            let mut out = tail;
            out[p] = out[p].add(&UPoly::monomial(c, d));
            self.basis[k] = out;
        }
    }

    /// Elements leading at a unit coefficient, one per position (lowest
    /// degree), if every position has one.
    pub fn monic_per_position(&self) -> Option<Vec<&UVec>> {
        (0..self.rank)
            .map(|pos| {
                self.basis
                    .iter()
                    .filter(|g| {
                        let (p, _, c) = lead(g).unwrap();
                        p == pos && c.is_one()
                    })
                    .min_by_key(|g| lead(g).unwrap().1)
            })
            .collect()
    }
}

/// Columns of `m` shifted into Z[t]; also returns the shift applied to
/// each column.
pub fn clear_columns(m: &LambdaMatrix) -> (Vec<UVec>, Vec<i64>) {
    let mut cols = Vec::with_capacity(m.cols());
    let mut shifts = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let col = m.col(j);
        let lo = col.iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
        shifts.push(-lo);
        cols.push(col.iter().map(|p| UPoly::from_laurent(&p.shift(-lo))).collect());
    }
    (cols, shifts)
}

pub fn laurent_vec(v: &[UPoly]) -> Vec<ZPoly> {
    v.iter().map(UPoly::to_laurent).collect()
}

/// Generators of `{x ∈ Z[t]^n : Σ x_j cols_j = 0}` for `cols` in Z[t]^m,
/// with redundant ones removed.
pub fn zt_kernel(m: usize, cols: &[UVec], lim: &Limits) -> Result<Vec<UVec>, ExtError> {
    let mut out = zt_kernel_raw(m, cols, lim)?;
    out.sort_by_key(|v| (vec_degree(v), max_coeff(v), lead(v).map(|l| l.0)));
    prune(cols.len(), out, lim)
}

fn max_coeff(v: &[UPoly]) -> num_bigint::BigUint {
    v.iter().flat_map(|p| p.coeffs().iter().map(|c| c.magnitude().clone())).max().unwrap_or_default()
}

fn zt_kernel_raw(m: usize, cols: &[UVec], lim: &Limits) -> Result<Vec<UVec>, ExtError> {
    let n = cols.len();
    let gens: Vec<UVec> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.extend((0..n).map(|k| if k == j { UPoly::constant(BigInt::one()) } else { UPoly::zero() }));
            v
        })
        .collect();
    let g = Groebner::new(m + n, gens, lim)?;
    Ok(g.basis().iter().filter(|v| lead(v).is_some_and(|l| l.0 >= m)).map(|v| v[m..].to_vec()).collect())
}

/// Drops generators already in the Z[t]-span of the earlier ones.
pub fn prune(rank: usize, gens: Vec<UVec>, lim: &Limits) -> Result<Vec<UVec>, ExtError> {
    let mut keep: Vec<UVec> = Vec::new();
    let mut gb = Groebner::new(rank, Vec::new(), lim)?;
    for v in gens {
        if gb.contains(&v) {
            continue;
        }
        keep.push(v);
        gb = Groebner::new(rank, keep.clone(), lim)?;
    }
    Ok(keep)
}

/// `(S : t^∞)` for `S` spanned by `gens` in Z[t]^rank.
pub fn saturate(rank: usize, gens: Vec<UVec>, lim: &Limits) -> Result<Groebner, ExtError> {
    let mut current = Groebner::new(rank, gens, lim)?;
    loop {
        // (S : t) is the projection of syz([t·I | S]) to the first block.
        let mut cols: Vec<UVec> = (0..rank)
            .map(|i| (0..rank).map(|k| if k == i { UPoly::monomial(BigInt::one(), 1) } else { UPoly::zero() }).collect())
            .collect();
        cols.extend(current.basis().iter().cloned());
        let ker = zt_kernel_raw(rank, &cols, lim)?;
        let quotient: Vec<UVec> = ker.into_iter().map(|v| v[..rank].to_vec()).collect();
        if quotient.iter().all(|v| current.contains(v)) {
            return Ok(current);
        }
        let mut all = current.basis().to_vec();
        all.extend(quotient);
        current = Groebner::new(rank, all, lim)?;
    }
}

/// Augmented basis for lifting: elements `(A'c ; c)` for the columns of
/// `A'`.
pub struct Lifter {
    m: usize,
    shifts: Vec<i64>,
    gb: Groebner,
}

impl Lifter {
    pub fn new(a: &LambdaMatrix, lim: &Limits) -> Result<Self, ExtError> {
        let (cols, shifts) = clear_columns(a);
        let m = a.rows();
        let n = cols.len();
        let gens: Vec<UVec> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut v = c.clone();
                v.extend((0..n).map(|k| if k == j { UPoly::constant(BigInt::one()) } else { UPoly::zero() }));
                v
            })
            .collect();
        Ok(Lifter { m, shifts, gb: Groebner::new(m + n, gens, lim)? })
    }

    /// Some `x` with `A x = v` over Λ, trying `t^k v` for `k ≤ max_shift`.
    pub fn lift(&self, v: &[ZPoly], max_shift: usize) -> Option<Vec<ZPoly>> {
        let lo = v.iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
        let n = self.shifts.len();
        for k in 0..=max_shift as i64 {
            let mut w: UVec = v.iter().map(|p| UPoly::from_laurent(&p.shift(k - lo))).collect();
            w.extend((0..n).map(|_| UPoly::zero()));
            let r = self.gb.top_reduce(w);
            if lead(&r).is_some_and(|l| l.0 < self.m) {
                continue;
            }
            // r = (t^{k-lo} v - A'c ; -c); undo the shifts.
            let x = (0..n)
                .map(|j| (-r[self.m + j].to_laurent()).shift(self.shifts[j] - (k - lo)))
                .collect();
            return Some(x);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UPoly {
        UPoly::from_vec(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn ideal_of_two_polys() {
        let lim = Limits::default();
        // (t-1)^2 and 2(t-1): the ideal contains 2(t-1) and (t-1)^2, not t-1
        let g = Groebner::new(1, vec![vec![u(&[1, -2, 1])], vec![u(&[-2, 2])]], &lim).unwrap();
        assert!(g.contains(&[u(&[0, -2, 2])]));
        assert!(!g.contains(&[u(&[-1, 1])]));
        assert!(g.contains(&[u(&[1, -2, 1]).mul(&u(&[3, 1]))]));
    }

    #[test]
    fn koszul_kernel() {
        let lim = Limits::default();
        let k = zt_kernel(1, &[vec![u(&[-1, 1])], vec![u(&[2])]], &lim).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // proportional to (2, -(t-1))
        assert_eq!(v[0].mul(&u(&[-1, 1])).add(&v[1].mul(&u(&[2]))), UPoly::zero());
        assert!(v[0] == u(&[2]) || v[0] == u(&[-2]));
    }

    #[test]
    fn saturation_removes_t_torsion() {
        let lim = Limits::default();
        // S = (t·(t-2)): saturation is (t-2)
        let s = saturate(1, vec![vec![u(&[0, -2, 1])]], &lim).unwrap();
        assert!(s.contains(&[u(&[-2, 1])]));
    }

    #[test]
    fn lift_recovers_coefficients() {
        let lim = Limits::default();
        let a = LambdaMatrix::from_rows((), 2, vec![vec![ZPoly::z(0, &[-1, 1]), ZPoly::z_int(2)]]);
        let l = Lifter::new(&a, &lim).unwrap();
        assert!(l.lift(&[ZPoly::z_one()], 4).is_none());
        let target = vec![ZPoly::z(-1, &[3, -1])];
        let x = l.lift(&target, 4).unwrap();
        assert_eq!(a.mul_vec(&x), target);
    }
}

//! Smith normal form over Euclidean domains: Z, Q[t, t⁻¹] and F_p[t, t⁻¹].
//!
//! Pivoting always picks the nonzero entry of smallest Euclidean size in
//! the active block, ties broken by the smallest `(row, col)`, so the
//! transforms are reproducible.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use super::coeff::FieldCoeff;
use super::matrix::{Matrix, RingElem};
use super::poly::Laurent;

pub trait Euclidean: RingElem {
    type Size: Ord;

    /// Euclidean size of a nonzero element.
    fn size(&self) -> Self::Size;
    fn div_rem_e(&self, d: &Self) -> (Self, Self);
    /// A unit `u` with `u * self` the canonical associate, and its inverse.
    fn normalizing_unit_e(&self) -> (Self, Self);
    fn is_unit_e(&self) -> bool;

    fn divides(&self, x: &Self) -> bool {
        if self.is_zero_elem() {
            return x.is_zero_elem();
        }
        x.div_rem_e(self).1.is_zero_elem()
    }
}

impl Euclidean for BigInt {
    type Size = BigUint;

    fn size(&self) -> BigUint {
        self.magnitude().clone()
    }
    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        // Floor division keeps |r| < |d|.
        self.div_mod_floor(d)
    }
    fn normalizing_unit_e(&self) -> (Self, Self) {
        if self.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
    fn is_unit_e(&self) -> bool {
        self.magnitude().is_one()
    }
}

impl<C: FieldCoeff> Euclidean for Laurent<C> {
    type Size = i64;

    fn size(&self) -> i64 {
        self.span().unwrap_or(0)
    }
    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        self.div_rem(d)
    }
    fn normalizing_unit_e(&self) -> (Self, Self) {
        let u = self.normalizing_unit();
        let inv = u.unit_inverse().expect("normalizing factor is a unit");
        (u, inv)
    }
    fn is_unit_e(&self) -> bool {
        self.is_unit()
    }
}

/// `u * a * v = d` with `u`, `v` invertible and `d` diagonal.
#[derive(Clone, Debug)]
pub struct Snf<E: RingElem> {
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    pub d: Matrix<E>,
    pub rank: usize,
}

impl<E: Euclidean> Snf<E> {
    /// Nonzero diagonal entries in order, each the canonical associate.
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|k| self.d[(k, k)].clone()).collect()
    }

    /// Basis of the column image of the original matrix.
    pub fn image_basis(&self) -> Vec<Vec<E>> {
        (0..self.rank)
            .map(|k| {
                let dk = &self.d[(k, k)];
                self.u_inv.col(k).iter().map(|x| x.mul_e(dk)).collect()
            })
            .collect()
    }

    /// Basis of the right kernel `{x : a x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<E>> {
        (self.rank..self.v.cols()).map(|k| self.v.col(k)).collect()
    }

    /// Some `x` with `a x = b`, if one exists.
    pub fn solve(&self, b: &[E]) -> Option<Vec<E>> {
        let ub = self.u.mul_vec(b);
        let ctx = self.d.ctx();
        let mut y = vec![E::zero_in(ctx); self.v.cols()];
        for (k, val) in ub.iter().enumerate() {
            if k < self.rank {
                let (q, r) = val.div_rem_e(&self.d[(k, k)]);
                if !r.is_zero_elem() {
                    return None;
                }
                y[k] = q;
            } else if !val.is_zero_elem() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

pub fn snf<E: Euclidean>(a: &Matrix<E>) -> Snf<E> {
    let ctx = a.ctx();
    let (r, c) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = Matrix::identity(ctx, r);
    let mut u_inv = Matrix::identity(ctx, r);
    let mut v = Matrix::identity(ctx, c);
    let mut v_inv = Matrix::identity(ctx, c);
    let mut rank = 0;

    for k in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    let x = &m[(i, j)];
                    if x.is_zero_elem() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => x.size() < m[(bi, bj)].size(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                finish(&mut m, &mut u, &mut u_inv, rank);
                return Snf { u, u_inv, v, v_inv, d: m, rank };
            };
            m.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            m.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let pivot = m[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..r {
                if m[(i, k)].is_zero_elem() {
                    continue;
                }
                let (q, rem) = m[(i, k)].div_rem_e(&pivot);
                let nq = q.neg_e();
                m.add_row_multiple(i, k, &nq);
                u.add_row_multiple(i, k, &nq);
                u_inv.add_col_multiple(k, i, &q);
                clean &= rem.is_zero_elem();
            }
            for j in k + 1..c {
                if m[(k, j)].is_zero_elem() {
                    continue;
                }
                let (q, rem) = m[(k, j)].div_rem_e(&pivot);
                let nq = q.neg_e();
                m.add_col_multiple(j, k, &nq);
                v.add_col_multiple(j, k, &nq);
                v_inv.add_row_multiple(k, j, &q);
                clean &= rem.is_zero_elem();
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..r).find(|&i| (k + 1..c).any(|j| !pivot.divides(&m[(i, j)])));
            if let Some(i) = offender {
                let one = E::one_in(ctx);
                m.add_row_multiple(k, i, &one);
                u.add_row_multiple(k, i, &one);
                u_inv.add_col_multiple(i, k, &one.neg_e());
                continue;
            }
            rank += 1;
            break;
        }
    }
    finish(&mut m, &mut u, &mut u_inv, rank);
    Snf { u, u_inv, v, v_inv, d: m, rank }
}

fn finish<E: Euclidean>(m: &mut Matrix<E>, u: &mut Matrix<E>, u_inv: &mut Matrix<E>, rank: usize) {
    for k in 0..rank {
        let (unit, inv) = m[(k, k)].normalizing_unit_e();
        m.scale_row(k, &unit);
        u.scale_row(k, &unit);
        u_inv.scale_col(k, &inv);
    }
}

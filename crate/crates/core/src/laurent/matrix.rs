use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::poly::{Laurent, ZPoly};

/// Commutative ring element usable as a matrix entry.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    type Ctx: Copy + PartialEq + fmt::Debug;

    fn zero_in(ctx: Self::Ctx) -> Self;
    fn one_in(ctx: Self::Ctx) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_e(&self, o: &Self) -> Self;
    fn sub_e(&self, o: &Self) -> Self;
    fn mul_e(&self, o: &Self) -> Self;
    fn neg_e(&self) -> Self;
}

impl RingElem for BigInt {
    type Ctx = ();
    fn zero_in(_: ()) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one_in(_: ()) -> Self {
        <BigInt as One>::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_e(&self) -> Self {
        -self
    }
}

impl<C: Coeff> RingElem for Laurent<C> {
    type Ctx = C::Ctx;
    fn zero_in(ctx: C::Ctx) -> Self {
        Laurent::zero(ctx)
    }
    fn one_in(ctx: C::Ctx) -> Self {
        Laurent::one(ctx)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_e(&self) -> Self {
        -self
    }
}

/// Dense row-major matrix. All target sizes here are small.
#[derive(Clone, PartialEq)]
pub struct Matrix<E: RingElem> {
    ctx: E::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Matrix over Λ = Z[t, t⁻¹].
pub type LambdaMatrix = Matrix<ZPoly>;
/// Matrix over Z.
pub type IntMatrix = Matrix<BigInt>;

impl<E: RingElem> Matrix<E> {
    pub fn zeros(ctx: E::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { ctx, rows, cols, data: vec![E::zero_in(ctx); rows * cols] }
    }

    pub fn identity(ctx: E::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = E::one_in(ctx);
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(ctx: E::Ctx, cols: usize, rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { ctx, rows: r, cols, data }
    }

    /// Builds from columns; every column must have length `rows`.
    pub fn from_cols(ctx: E::Ctx, rows: usize, cols: Vec<Vec<E>>) -> Self {
        let c = cols.len();
        let mut m = Self::zeros(ctx, rows, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn ctx(&self) -> E::Ctx {
        self.ctx
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero_elem() {
                        out[(i, j)] = out[(i, j)].add_e(&a.mul_e(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(E::zero_in(self.ctx), |acc, j| acc.add_e(&self[(i, j)].mul_e(&v[j])))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add_e(b)).collect();
        Matrix { ctx: self.ctx, rows: self.rows, cols: self.cols, data }
    }

    pub fn map<F: RingElem, M: Fn(&E) -> F>(&self, ctx: F::Ctx, f: M) -> Matrix<F> {
        Matrix { ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_cols(self.ctx, self.rows, cols)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { ctx: self.ctx, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.ctx, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn remove_row(&self, r: usize) -> Self {
        let rows: Vec<Vec<E>> = (0..self.rows).filter(|&i| i != r).map(|i| self.row(i)).collect();
        Self::from_rows(self.ctx, self.cols, rows)
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        Self::from_cols(self.ctx, self.rows, keep.iter().map(|&j| self.col(j)).collect())
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self::from_rows(self.ctx, self.cols, keep.iter().map(|&i| self.row(i)).collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += f * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &E) {
        for j in 0..self.cols {
            let s = self[(src, j)].clone();
            if !s.is_zero_elem() {
                self[(dst, j)] = self[(dst, j)].add_e(&f.mul_e(&s));
            }
        }
    }

    /// `col[dst] += f * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &E) {
        for i in 0..self.rows {
            let s = self[(i, src)].clone();
            if !s.is_zero_elem() {
                self[(i, dst)] = self[(i, dst)].add_e(&f.mul_e(&s));
            }
        }
    }

    pub fn scale_row(&mut self, r: usize, f: &E) {
        for j in 0..self.cols {
            self[(r, j)] = f.mul_e(&self[(r, j)]);
        }
    }

    pub fn scale_col(&mut self, c: usize, f: &E) {
        for i in 0..self.rows {
            self[(i, c)] = self[(i, c)].mul_e(f);
        }
    }
}

impl<E: RingElem> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<E: RingElem> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<E: RingElem> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl LambdaMatrix {
    /// Entrywise substitution `t = 1`.
    pub fn eval_at_one(&self) -> IntMatrix {
        self.map((), |p| p.eval_at_one())
    }

    pub fn from_ints(m: &IntMatrix) -> Self {
        m.map((), |c| ZPoly::constant((), c.clone()))
    }

    /// Multiplies the whole matrix by the least `t^k` that clears all
    /// negative exponents; returns the shifted matrix.
    pub fn clear_negative_powers(&self) -> Self {
        let low = self.data.iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
        if low >= 0 {
            self.clone()
        } else {
            self.map((), |p| p.shift(-low))
        }
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows((), cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_at_one_examples() {
        let a = LambdaMatrix::from_rows((), 2, vec![vec![ZPoly::z(0, &[1, -2, 1]), ZPoly::z(0, &[-2, 2])]]);
        assert!(a.eval_at_one().is_zero());
        let b = LambdaMatrix::from_rows((), 2, vec![vec![ZPoly::z(0, &[1, 1]), ZPoly::z_int(7)]]);
        assert_eq!(b.eval_at_one(), IntMatrix::from_i64_rows(&[vec![2, 7]]));
        let c = LambdaMatrix::from_rows((), 1, vec![vec![ZPoly::z(0, &[-1, 2])]]);
        assert_eq!(c.eval_at_one(), IntMatrix::from_i64_rows(&[vec![1]]));
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_i64_rows(&[vec![1, 3], vec![2, 4]]));
    }
}

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;

use super::field::Field;
use super::upoly::UniPoly;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        Self::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// `self + c * I`
    pub fn add_scalar_identity(&self, c: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() + c;
        }
        m
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn hstack(blocks: &[Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, c, b);
            c += b.cols;
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)].clone() * &other[(i % other.rows, j % other.cols)]
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].try_inv().unwrap();
            for j in col..m.cols {
                m[(row, j)] = m[(row, j)].clone() * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let c = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = m[(row, j)].clone() * &c;
                        m[(r, j)] = m[(r, j)].clone() - &v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as the columns of an `cols x k` matrix.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -r[(i, fc)].clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::hstack(&[self.clone(), Self::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    /// Solves `self * x = b` when the solution exists (any one).
    pub fn solve(&self, b: &Self) -> Option<Self> {
        let n = self.cols;
        let aug = Self::hstack(&[self.clone(), b.clone()]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, n + j)].clone();
            }
        }
        Some(x)
    }

    /// Characteristic polynomial `det(t I - A)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = (self * &m).add_scalar_identity(&coeffs[n + 1 - k]);
            let tr = (self * &m).trace();
            coeffs[n - k] = -(tr * &F::from_int(k as i64).try_inv().unwrap());
        }
        UniPoly::new(coeffs)
    }

    /// Equal to the zero matrix after at most `n` powers.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows).is_zero()
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = a.clone() * b;
                        out[(i, j)] = out[(i, j)].clone() + &v;
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Solver for `A X - X B = C` with `A`, `B` of disjoint spectra.
///
/// The vectorized operator is inverted once and reused for every
/// right-hand side.
pub struct Sylvester<F> {
    p: usize,
    q: usize,
    op_inv: Matrix<F>,
}

impl<F: Field> Sylvester<F> {
    pub fn new(a: &Matrix<F>, b: &Matrix<F>) -> Option<Self> {
        let (p, q) = (a.rows(), b.rows());
        // column-major vec: (I_q (x) A - B^T (x) I_p) vec X
        let op = Matrix::identity(q)
            .kron(a)
            .sub(&b.transpose().kron(&Matrix::identity(p)));
        Some(Sylvester { p, q, op_inv: op.inverse()? })
    }

    pub fn solve(&self, c: &Matrix<F>) -> Matrix<F> {
        let vec_c = Matrix::from_fn(self.p * self.q, 1, |k, _| c[(k % self.p, k / self.p)].clone());
        let x = &self.op_inv * &vec_c;
        Matrix::from_fn(self.p, self.q, |i, j| x[(j * self.p + i, 0)].clone())
    }
}

impl<F: Field> Matrix<F> {
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let x = a.solve(&m(&[&[3], &[2]])).unwrap();
        assert_eq!(x, m(&[&[1], &[1]]));
    }

    #[test]
    fn charpoly_of_companion() {
        let a = m(&[&[0, -2], &[-2, 0]]);
        assert_eq!(a.charpoly(), UniPoly::new(vec![int(-4), int(0), int(1)]));
    }

    #[test]
    fn nullspace_dimension() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.nullspace();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn sylvester_roundtrip() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let b = m(&[&[3]]);
        let c = m(&[&[5], &[7]]);
        let x = Sylvester::new(&a, &b).unwrap().solve(&c);
        assert_eq!(&(&a * &x).sub(&(&x * &b)), &c);
    }
}

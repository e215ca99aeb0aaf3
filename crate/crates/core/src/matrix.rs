//! Dense complex matrices.
//!
//! `Matrix` is a thin wrapper over a `faer` matrix. Construction from rows uses
//! row-major semantics; vectorization uses column stacking, so that
//! `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use faer::{Mat, MatRef};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};

#[derive(Clone)]
pub struct Matrix<T: Real> {
    inner: Mat<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            inner: Mat::from_fn(rows, cols, |_, _| Complex::zero()),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self {
            inner: Mat::from_fn(rows, cols, f),
        }
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
    }

    /// Real matrix from `f64` rows. Panics on ragged input; meant for literals.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == ncols), "ragged rows");
        Self::from_fn(rows.len(), ncols, |i, j| Complex::new(T::lit(rows[i].as_ref()[j]), T::zero()))
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex::zero() })
    }

    pub fn real_diag(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(entries[i], T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Complex<T>>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn from_faer(inner: Mat<Complex<T>>) -> Self {
        Self { inner }
    }

    pub fn as_faer(&self) -> MatRef<'_, Complex<T>> {
        self.inner.as_ref()
    }

    pub fn into_faer(self) -> Mat<Complex<T>> {
        self.inner
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    /// Side length of a square matrix (row count otherwise).
    #[inline]
    pub fn dim(&self) -> usize {
        self.nrows()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows())
        } else {
            Err(Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.inner[(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.inner[(i, j)] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_faer(self.inner.adjoint().to_owned())
    }

    pub fn transpose(&self) -> Self {
        Self::from_faer(self.inner.transpose().to_owned())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.get(i, j).conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.nrows().min(self.ncols())).fold(Complex::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.inner.norm_l2()
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        (0..self.ncols()).all(|j| (0..self.nrows()).all(|i| {
            let z = self.get(i, j);
            z.re.is_finite() && z.im.is_finite()
        }))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.get(i, j) * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.get(i, j) * s)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (br, bc) = (other.nrows(), other.ncols());
        Self::from_fn(self.nrows() * br, self.ncols() * bc, |i, j| {
            self.get(i / br, j / bc) * other.get(i % br, j % bc)
        })
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `‖M − M†‖`.
    pub fn hermitian_residual(&self) -> T {
        (self - &self.adjoint()).norm()
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(T::lit(0.5))
    }

    /// `(M − M†) / 2i`, Hermitian, so that `M = re + i·im`.
    pub fn skew_hermitian_part(&self) -> Self {
        (self - &self.adjoint()).scale(Complex::new(T::zero(), -T::lit(0.5)))
    }

    /// Column-stacked vectorization.
    pub fn vectorize(&self) -> Vec<Complex<T>> {
        let mut out = Vec::with_capacity(self.nrows() * self.ncols());
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Inverse of [`Matrix::vectorize`] for a `dim × dim` matrix.
    pub fn unvectorize(v: &[Complex<T>], dim: usize) -> Self {
        assert_eq!(v.len(), dim * dim, "vector length is not dim²");
        Self::from_fn(dim, dim, |i, j| v[j * dim + i])
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.nrows()).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self, start: usize, count: usize) -> Self {
        Self::from_fn(self.nrows(), count, |i, j| self.get(i, start + j))
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).fold(Complex::zero(), |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }

    /// `‖self − other‖`.
    pub fn dist(&self, other: &Self) -> T {
        (self - other).norm()
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.nrows());
        let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.nrows(), rows, "hstack row mismatch");
            for j in 0..b.ncols() {
                for i in 0..rows {
                    out.set(i, offset + j, b.get(i, j));
                }
            }
            offset += b.ncols();
        }
        out
    }

    pub fn cast<U: Real>(&self) -> Matrix<U> {
        Matrix::from_fn(self.nrows(), self.ncols(), |i, j| {
            let z = self.get(i, j);
            Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()))
        })
    }
}

/// Vector helpers on plain slices.
pub(crate) fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

pub(crate) fn vec_dot<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
}

impl<T: Real> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows(), self.ncols())?;
        for i in 0..self.nrows() {
            write!(f, "  ")?;
            for j in 0..self.ncols() {
                let z = self.get(i, j);
                write!(f, "{:>9.4}{:+.4}i ", z.re.as_f64(), z.im.as_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a, T: Real> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::from_faer(&self.inner + &rhs.inner)
    }
}

impl<'a, T: Real> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::from_faer(&self.inner - &rhs.inner)
    }
}

impl<'a, T: Real> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::from_faer(&self.inner * &rhs.inner)
    }
}

impl<T: Real> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Matrix<T>) -> Matrix<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Matrix<T>) -> Matrix<T> {
        &self - &rhs
    }
}

impl<T: Real> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.scale_real(-T::one())
    }
}

impl<T: Real> AddAssign<&Matrix<T>> for Matrix<T> {
    fn add_assign(&mut self, rhs: &Matrix<T>) {
        self.inner = &self.inner + &rhs.inner;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<f64>;

    #[test]
    fn vectorization_is_column_stacking() {
        let a = M::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let v: Vec<f64> = a.vectorize().iter().map(|z| z.re).collect();
        assert_eq!(v, vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(M::unvectorize(&a.vectorize(), 2).dist(&a), 0.0);
    }

    #[test]
    fn vec_of_product_matches_kron_convention() {
        let a = M::from_fn(3, 3, |i, j| Complex::new(i as f64 + 1.0, j as f64 - 0.5));
        let x = M::from_fn(3, 3, |i, j| Complex::new((i * j) as f64, 1.0));
        let b = M::from_fn(3, 3, |i, j| Complex::new(j as f64, (i + j) as f64 * 0.25));
        let lhs = (&(&a * &x) * &b).vectorize();
        let k = b.transpose().kron(&a);
        let rhs = k.mul_vec(&x.vectorize());
        let err: f64 = lhs.iter().zip(&rhs).map(|(p, q)| (p - q).norm()).sum();
        assert!(err < 1e-12);
    }

    #[test]
    fn kron_block_layout() {
        // A ⊗ B = (a_ij B)
        let a = M::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let b = M::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1).re, 1.0);
        assert_eq!(k.get(0, 3).re, 2.0);
        assert_eq!(k.get(3, 2).re, 4.0);
        assert_eq!(k.get(2, 1).re, 3.0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Complex::new(1.0, 0.0)], vec![]];
        assert!(M::from_rows(&rows).is_err());
    }
}

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigensystem;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::tolerance::ToleranceConfig;

/// Orthogonal projection together with an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct Projection<T: Real> {
    matrix: Matrix<T>,
    range: Matrix<T>,
}

impl<T: Real> Projection<T> {
    /// Validates that `m` is Hermitian and idempotent and has integral trace.
    pub fn new(m: Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Self> {
        let dim = m.ensure_square()?;
        let limit = tol.check_tol(dim);
        let residual = m.hermitian_residual().max((&m * &m).dist(&m));
        if residual > limit {
            return Err(Error::NotProjection {
                residual: residual.as_f64(),
            });
        }
        let trace = m.trace().re;
        if (trace - trace.round()).abs() > tol.zero_tol(dim) * T::lit(10.0) {
            return Err(Error::NotProjection {
                residual: (trace - trace.round()).abs().as_f64(),
            });
        }
        let rank = trace.round().to_usize().unwrap_or(0);
        let sys = hermitian_eigensystem(&m, tol)?;
        // eigenvalues are ascending, so the range is the last `rank` columns
        let range = sys.eigenvectors.columns(dim - rank, rank);
        Ok(Self { matrix: m, range })
    }

    /// Projection onto the span of the orthonormal columns of `w`.
    pub(crate) fn from_range(w: Matrix<T>) -> Self {
        Self {
            matrix: &w * &w.adjoint(),
            range: w,
        }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// `dim × rank` matrix with orthonormal columns spanning the range.
    pub fn range(&self) -> &Matrix<T> {
        &self.range
    }

    pub fn rank(&self) -> usize {
        self.range.ncols()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `‖P − Q‖`; zero exactly when the ranges coincide.
    pub fn distance(&self, other: &Self) -> T {
        self.matrix.dist(&other.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_range() {
        let tol = ToleranceConfig::<f64>::default();
        let p = Projection::new(Matrix::real_diag(&[1.0, 0.0, 1.0]), &tol).unwrap();
        assert_eq!(p.rank(), 2);
        let w = p.range();
        assert!((w * &w.adjoint()).dist(p.matrix()) < 1e-14);
        assert!(Projection::new(Matrix::real_diag(&[0.5, 0.0]), &tol).is_err());
    }
}

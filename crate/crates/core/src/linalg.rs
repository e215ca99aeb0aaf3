//! Tolerance-aware spectral analysis, rank and nullspace.

use faer::{Mat, Side};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{re, Complex, Real};
use crate::span::{OperatorSpan, SpanKind};
use crate::tolerance::ToleranceConfig;

/// Hilbert–Schmidt inner product `tr(A†B)`.
pub fn hs_inner<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Complex<T>> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows() * a.ncols(),
            found: b.nrows() * b.ncols(),
        });
    }
    Ok(hs_inner_unchecked(a, b))
}

pub(crate) fn hs_inner_unchecked<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Complex<T> {
    let mut acc = Complex::zero();
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc = acc + a.get(i, j).conj() * b.get(i, j);
        }
    }
    acc
}

/// Eigen-decomposition of a Hermitian matrix with degenerate eigenvalues merged.
#[derive(Debug, Clone)]
pub struct HermitianEigenSystem<T: Real> {
    /// Ascending cluster representatives (mean of the merged raw eigenvalues).
    pub eigenvalues: Vec<T>,
    pub multiplicities: Vec<usize>,
    /// Unitary; columns are grouped by cluster in the order of `eigenvalues`.
    pub eigenvectors: Matrix<T>,
}

impl<T: Real> HermitianEigenSystem<T> {
    pub fn dim(&self) -> usize {
        self.eigenvectors.nrows()
    }

    pub fn cluster_count(&self) -> usize {
        self.eigenvalues.len()
    }

    fn offset(&self, k: usize) -> usize {
        self.multiplicities[..k].iter().sum()
    }

    /// Orthonormal basis (as columns) of the `k`-th eigenspace.
    pub fn cluster_basis(&self, k: usize) -> Matrix<T> {
        self.eigenvectors.columns(self.offset(k), self.multiplicities[k])
    }

    pub fn projection(&self, k: usize) -> Matrix<T> {
        let w = self.cluster_basis(k);
        &w * &w.adjoint()
    }

    /// `U diag(λ) U†`.
    pub fn reconstruct(&self) -> Matrix<T> {
        self.apply_function(|x| re(x))
    }

    /// Functional calculus `Σ f(λₖ) Pₖ`.
    pub fn apply_function(&self, f: impl Fn(T) -> Complex<T>) -> Matrix<T> {
        let d = self.dim();
        let mut diag = Vec::with_capacity(d);
        for (lambda, &mult) in self.eigenvalues.iter().zip(&self.multiplicities) {
            let v = f(*lambda);
            diag.extend(std::iter::repeat_n(v, mult));
        }
        let u = &self.eigenvectors;
        &(u * &Matrix::diag(&diag)) * &u.adjoint()
    }
}

fn check_finite<T: Real>(m: &Matrix<T>) -> Result<()> {
    if m.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub(crate) fn ensure_hermitian<T: Real>(m: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<()> {
    m.ensure_square()?;
    check_finite(m)?;
    let residual = m.hermitian_residual();
    if residual > tol.eps_zero * m.norm().max(T::one()) {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }
    Ok(())
}

/// Raw ascending eigenvalues and eigenvectors of the Hermitian part of `m`.
pub(crate) fn raw_eigh<T: Real>(m: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    let h = m.hermitian_part();
    let evd = h
        .as_faer()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let values: Vec<T> = evd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((values, Matrix::from_faer(evd.U().to_owned())))
}

/// Groups ascending values: consecutive gaps `≤ threshold` join a cluster.
fn cluster_sorted<T: Real>(values: &[T], threshold: T) -> Vec<(T, usize)> {
    let mut clusters: Vec<(T, usize)> = Vec::new();
    let mut last: Option<T> = None;
    for &v in values {
        match (clusters.last_mut(), last) {
            (Some((sum, count)), Some(prev)) if v - prev <= threshold => {
                *sum = *sum + v;
                *count += 1;
            }
            _ => clusters.push((v, 1)),
        }
        last = Some(v);
    }
    clusters
        .into_iter()
        .map(|(sum, count)| (sum / T::from_usize_lossy(count), count))
        .collect()
}

pub fn hermitian_eigensystem<T: Real>(
    m: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<HermitianEigenSystem<T>> {
    ensure_hermitian(m, tol)?;
    let (values, vectors) = raw_eigh(m)?;
    let spectral_norm = values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let threshold = tol.eps_cluster * spectral_norm.max(T::one());
    let clusters = cluster_sorted(&values, threshold);
    Ok(HermitianEigenSystem {
        eigenvalues: clusters.iter().map(|c| c.0).collect(),
        multiplicities: clusters.iter().map(|c| c.1).collect(),
        eigenvectors: vectors,
    })
}

/// One `(λᵢ, Pᵢ)` per eigenvalue cluster, ascending in `λ`.
pub fn spectral_projections<T: Real>(
    m: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<(T, Matrix<T>)>> {
    let sys = hermitian_eigensystem(m, tol)?;
    Ok((0..sys.cluster_count())
        .map(|k| (sys.eigenvalues[k], sys.projection(k)))
        .collect())
}

/// Singular values (padded with zeros to `ncols`) and the full right singular basis.
pub(crate) fn right_singular<T: Real>(m: &Matrix<T>) -> Result<(Vec<T>, Mat<Complex<T>>)> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let decomp_err = |e| Error::Decomposition(format!("{e:?}"));
    if cols == 0 {
        return Ok((Vec::new(), Mat::from_fn(0, 0, |_, _| Complex::zero())));
    }
    let (mut sigma, v): (Vec<T>, Mat<Complex<T>>) = if rows > cols {
        // Same singular values and right vectors as the square triangular factor.
        let r = m.as_faer().qr().thin_R().to_owned();
        let svd = r.thin_svd().map_err(decomp_err)?;
        let s = svd.S().column_vector().iter().map(|z| z.re).collect();
        (s, svd.V().to_owned())
    } else if rows == cols {
        let svd = m.as_faer().thin_svd().map_err(decomp_err)?;
        let s = svd.S().column_vector().iter().map(|z| z.re).collect();
        (s, svd.V().to_owned())
    } else {
        let svd = m.as_faer().svd().map_err(decomp_err)?;
        let s = svd.S().column_vector().iter().map(|z| z.re).collect();
        (s, svd.V().to_owned())
    };
    sigma.resize(cols, T::zero());
    Ok((sigma, v))
}

pub fn singular_values<T: Real>(m: &Matrix<T>) -> Result<Vec<T>> {
    Ok(right_singular(m)?.0)
}

/// Orthonormal basis of the right nullspace, returned as the columns of a matrix.
///
/// A singular value counts as zero when `σ ≤ eps_rank · σ_max`.
pub fn nullspace<T: Real>(m: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    nullspace_scaled(m, T::zero(), tol)
}

/// As [`nullspace`], with the cutoff measured against `max(σ_max, scale)`.
///
/// `scale` is the size the matrix would have if it were not (nearly) zero, so that
/// rounding noise in a vanishing constraint matrix is not mistaken for rank.
pub(crate) fn nullspace_scaled<T: Real>(m: &Matrix<T>, scale: T, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    check_finite(m)?;
    let (sigma, v) = right_singular(m)?;
    let sigma_max = sigma.iter().copied().fold(T::zero(), T::max);
    let cutoff = tol.eps_rank * sigma_max.max(scale);
    let keep: Vec<usize> = (0..sigma.len()).filter(|&j| sigma[j] <= cutoff).collect();
    Ok(Matrix::from_fn(m.ncols(), keep.len(), |i, j| v[(i, keep[j])]))
}

/// Numerical rank under the same cutoff as [`nullspace`].
pub fn rank<T: Real>(m: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<usize> {
    let sigma = singular_values(m)?;
    let sigma_max = sigma.iter().copied().fold(T::zero(), T::max);
    Ok(sigma.iter().filter(|&&s| s > tol.eps_rank * sigma_max).count())
}

/// `exp(iH)` for Hermitian `H`.
pub fn matrix_exp_hermitian<T: Real>(h: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    let sys = hermitian_eigensystem(h, tol)?;
    Ok(sys.apply_function(|x| Complex::new(x.cos(), x.sin())))
}

/// Orthonormal basis (columns) of the column space of `m`.
pub(crate) fn column_space<T: Real>(m: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<Matrix<T>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(Matrix::zeros(m.nrows(), 0));
    }
    let svd = m
        .as_faer()
        .thin_svd()
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let sigma: Vec<T> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let sigma_max = sigma.iter().copied().fold(T::zero(), T::max);
    let keep = sigma
        .iter()
        .take_while(|&&s| sigma_max > T::zero() && s > tol.eps_rank * sigma_max)
        .count();
    let u = svd.U();
    Ok(Matrix::from_fn(m.nrows(), keep, |i, j| u[(i, j)]))
}

/// Orthonormal basis of the span of real vectors, as real vectors.
pub(crate) fn real_column_space<T: Real>(
    cols: &[Vec<T>],
    rows: usize,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<Vec<T>>> {
    if cols.is_empty() || rows == 0 {
        return Ok(Vec::new());
    }
    let m: Mat<T> = Mat::from_fn(rows, cols.len(), |i, j| cols[j][i]);
    let svd = m
        .thin_svd()
        .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let sigma: Vec<T> = svd.S().column_vector().iter().copied().collect();
    let sigma_max = sigma.iter().copied().fold(T::zero(), T::max);
    let keep = sigma
        .iter()
        .take_while(|&&s| sigma_max > T::zero() && s > tol.eps_rank * sigma_max)
        .count();
    let u = svd.U();
    Ok((0..keep).map(|j| (0..rows).map(|i| u[(i, j)]).collect()).collect())
}

/// Hilbert–Schmidt orthonormal basis of the linear span of `mats`.
pub fn orthonormalize_span<T: Real>(
    mats: &[Matrix<T>],
    tol: &ToleranceConfig<T>,
) -> Result<OperatorSpan<T>> {
    let Some(first) = mats.first() else {
        return Ok(OperatorSpan::empty(0, SpanKind::Span));
    };
    let dim = first.ensure_square()?;
    for m in mats {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows(),
            });
        }
        check_finite(m)?;
    }
    let vecs: Vec<Vec<Complex<T>>> = mats.iter().map(Matrix::vectorize).collect();
    let stacked = Matrix::from_columns(&vecs, dim * dim);
    let q = column_space(&stacked, tol)?;
    let basis = (0..q.ncols())
        .map(|j| Matrix::unvectorize(&q.column(j), dim))
        .collect();
    Ok(OperatorSpan::from_orthonormal(dim, basis, SpanKind::Span))
}

/// Joint spectral decomposition of a normal matrix: `(λ, orthonormal eigenbasis)` per
/// distinct eigenvalue.
pub fn normal_eigenspaces<T: Real>(
    m: &Matrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<(Complex<T>, Matrix<T>)>> {
    m.ensure_square()?;
    check_finite(m)?;
    let scale = m.norm().max(T::one());
    let residual = (m * &m.adjoint()).dist(&(&m.adjoint() * m));
    if residual > tol.eps_zero * scale * scale {
        return Err(Error::NotNormal {
            residual: residual.as_f64(),
        });
    }
    // M = H₁ + iH₂ with commuting Hermitian parts; split H₁'s eigenspaces by H₂.
    let real_part = m.hermitian_part();
    let imag_part = m.skew_hermitian_part();
    let outer = hermitian_eigensystem(&real_part, tol)?;
    let mut out = Vec::new();
    for k in 0..outer.cluster_count() {
        let w = outer.cluster_basis(k);
        let compressed = (&(&w.adjoint() * &imag_part) * &w).hermitian_part();
        let inner = hermitian_eigensystem(&compressed, tol)?;
        for j in 0..inner.cluster_count() {
            let basis = &w * &inner.cluster_basis(j);
            out.push((Complex::new(outer.eigenvalues[k], inner.eigenvalues[j]), basis));
        }
    }
    Ok(out)
}

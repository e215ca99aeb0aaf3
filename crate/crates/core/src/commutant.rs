//! Commutants, fixed points and double commutants as operator spans.

use num_traits::Zero;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, nullspace_scaled, real_column_space, HermitianEigenSystem};
use crate::matrix::Matrix;
use crate::random::gaussian;
use crate::scalar::{Complex, Real};
use crate::span::{OperatorSpan, SpanKind};
use crate::tolerance::ToleranceConfig;

const PIVOT_DRAWS: usize = 4;
const ALGEBRA_STREAM: u64 = 0x616c67;

fn common_dim<T: Real>(ops: &[Matrix<T>]) -> Result<usize> {
    let first = ops.first().ok_or(Error::EmptyInput("operator list"))?;
    let dim = first.ensure_square()?;
    for op in ops {
        op.ensure_square()?;
        if op.nrows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.nrows(),
            });
        }
    }
    Ok(dim)
}

/// Rows `I ⊗ A − Aᵀ ⊗ I` for every generator, stacked in generator order.
///
/// Its right nullspace is `vec` of the commutant.
pub fn commutator_stack<T: Real>(ops: &[Matrix<T>]) -> Result<Matrix<T>> {
    let d = common_dim(ops)?;
    let d2 = d * d;
    let mut stack = Matrix::zeros(ops.len() * d2, d2);
    for (k, a) in ops.iter().enumerate() {
        let base = k * d2;
        // row index (r, c) ↦ c·d + r, column index (i, j) ↦ j·d + i
        for c in 0..d {
            for r in 0..d {
                let row = base + c * d + r;
                // (I ⊗ A): entry A[r, i] at column (i, c)
                for i in 0..d {
                    let v = a.get(r, i);
                    if !v.is_zero() {
                        let col = c * d + i;
                        stack.set(row, col, stack.get(row, col) + v);
                    }
                }
                // (Aᵀ ⊗ I): entry A[j, c] at column (r, j)
                for j in 0..d {
                    let v = a.get(j, c);
                    if !v.is_zero() {
                        let col = j * d + r;
                        stack.set(row, col, stack.get(row, col) - v);
                    }
                }
            }
        }
    }
    Ok(stack)
}

fn span_from_null<T: Real>(null: &Matrix<T>, dim: usize, kind: SpanKind) -> OperatorSpan<T> {
    let basis = (0..null.ncols())
        .map(|j| Matrix::unvectorize(&null.column(j), dim))
        .collect();
    OperatorSpan::from_orthonormal(dim, basis, kind)
}

/// `{B : [B, Aₖ] = 0 ∀k}` from one stacked nullspace.
pub fn commutant_basis<T: Real>(ops: &[Matrix<T>], tol: &ToleranceConfig<T>) -> Result<OperatorSpan<T>> {
    let dim = common_dim(ops)?;
    for op in ops {
        if !op.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    let scale = ops.iter().map(Matrix::norm).fold(T::zero(), T::max);
    let null = nullspace_scaled(&commutator_stack(ops)?, scale, tol)?;
    Ok(span_from_null(&null, dim, SpanKind::Commutant))
}

/// `Fix(Φ) = ker(S − I)` for the superoperator `S`.
pub fn fixed_point_basis<T: Real>(ch: &KrausChannel<T>, tol: &ToleranceConfig<T>) -> Result<OperatorSpan<T>> {
    let dim = ch.dim();
    let s = ch.superoperator();
    let shifted = &s - &Matrix::identity(dim * dim);
    let null = nullspace_scaled(&shifted, T::one(), tol)?;
    Ok(span_from_null(&null, dim, SpanKind::FixedPoints))
}

/// Double commutant `{ops}″`.
///
/// When `{ops}′` is closed under adjoints the computation is reduced to the
/// commutant of a random Hermitian element of `{ops}′`, which is block diagonal in
/// that element's eigenbasis; otherwise the stacked nullspace is used directly.
pub fn algebra_basis<T: Real>(ops: &[Matrix<T>], tol: &ToleranceConfig<T>) -> Result<OperatorSpan<T>> {
    let commutant = commutant_basis(ops, tol)?;
    algebra_from_commutant(&commutant, tol)
}

/// Commutant of a span, using the Hermitian-pivot reduction when possible.
pub fn algebra_from_commutant<T: Real>(
    commutant: &OperatorSpan<T>,
    tol: &ToleranceConfig<T>,
) -> Result<OperatorSpan<T>> {
    let span = match hermitian_spanning_set(commutant, tol) {
        Ok(herm) => pivot_commutant(&herm, commutant.dim(), tol)?,
        Err(Error::NotDaggerClosed { .. }) => commutant_basis(commutant.basis(), tol)?,
        Err(e) => return Err(e),
    };
    Ok(span.with_kind(SpanKind::Algebra))
}

/// Plain double commutant from two stacked nullspaces; used as a cross-check.
pub fn algebra_basis_stacked<T: Real>(ops: &[Matrix<T>], tol: &ToleranceConfig<T>) -> Result<OperatorSpan<T>> {
    let commutant = commutant_basis(ops, tol)?;
    Ok(commutant_basis(commutant.basis(), tol)?.with_kind(SpanKind::Algebra))
}

/// Commutant of a set of Hermitian matrices.
fn pivot_commutant<T: Real>(herm: &[Matrix<T>], dim: usize, tol: &ToleranceConfig<T>) -> Result<OperatorSpan<T>> {
    // Several random pivots; keep the one whose distinct eigenvalues are best separated,
    // since a small gap makes the eigenbasis (and every later constraint) ill-conditioned.
    let mut rng = tol.rng(ALGEBRA_STREAM);
    let mut best: Option<(T, HermitianEigenSystem<T>)> = None;
    for _ in 0..PIVOT_DRAWS {
        let mut pivot = Matrix::zeros(dim, dim);
        for h in herm {
            let r: T = gaussian(&mut rng);
            pivot += &h.scale_real(r);
        }
        let sys = hermitian_eigensystem(&pivot, tol)?;
        let spread = sys.eigenvalues.iter().fold(T::one(), |acc, v| acc.max(v.abs()));
        let gap = sys
            .eigenvalues
            .windows(2)
            .map(|w| (w[1] - w[0]) / spread)
            .fold(T::infinity(), T::min);
        if best.as_ref().is_none_or(|(g, _)| gap > *g) {
            best = Some((gap, sys));
        }
    }
    let (_, sys) = best.expect("at least one pivot draw");
    let u = &sys.eigenvectors;

    // Free entries: (i, j) inside a diagonal block of the pivot's eigenbasis.
    let mut params: Vec<(usize, usize)> = Vec::new();
    let mut offset = 0;
    for &m in &sys.multiplicities {
        for j in offset..offset + m {
            for i in offset..offset + m {
                params.push((i, j));
            }
        }
        offset += m;
    }

    let d2 = dim * dim;
    let rotated: Vec<Matrix<T>> = herm.iter().map(|h| &(&u.adjoint() * h) * u).collect();
    let mut constraints = Matrix::zeros(rotated.len() * d2, params.len());
    for (k, b) in rotated.iter().enumerate() {
        let base = k * d2;
        for (p, &(i, j)) in params.iter().enumerate() {
            // [B, E_ij] = B E_ij − E_ij B: column j gains B[:, i], row i loses B[j, :]
            for r in 0..dim {
                let row = base + j * dim + r;
                constraints.set(row, p, constraints.get(row, p) + b.get(r, i));
            }
            for c in 0..dim {
                let row = base + c * dim + i;
                constraints.set(row, p, constraints.get(row, p) - b.get(j, c));
            }
        }
    }
    let scale = herm.iter().map(Matrix::norm).fold(T::zero(), T::max);
    let null = nullspace_scaled(&constraints, scale, tol)?;
    let basis = (0..null.ncols())
        .map(|col| {
            let mut z = Matrix::zeros(dim, dim);
            for (p, &(i, j)) in params.iter().enumerate() {
                z.set(i, j, null.get(p, col));
            }
            &(u * &z) * &u.adjoint()
        })
        .collect();
    Ok(OperatorSpan::from_orthonormal(dim, basis, SpanKind::Commutant))
}

/// Orthonormal Hermitian basis of a span closed under adjoints.
///
/// The real and imaginary parts `(B + B†)/2`, `(B − B†)/2i` of every basis element
/// are reduced to a linearly independent set with the same complex span.
pub fn hermitian_spanning_set<T: Real>(span: &OperatorSpan<T>, tol: &ToleranceConfig<T>) -> Result<Vec<Matrix<T>>> {
    let dim = span.dim();
    let residual = span.dagger_residual();
    if residual > tol.check_tol(dim) {
        return Err(Error::NotDaggerClosed {
            residual: residual.as_f64(),
        });
    }
    let d2 = dim * dim;
    let mut cols = Vec::with_capacity(2 * span.len());
    for b in span.basis() {
        for h in [b.hermitian_part(), b.skew_hermitian_part()] {
            let mut v = Vec::with_capacity(2 * d2);
            let entries = h.vectorize();
            v.extend(entries.iter().map(|z| z.re));
            v.extend(entries.iter().map(|z| z.im));
            cols.push(v);
        }
    }
    let basis = real_column_space(&cols, 2 * d2, tol)?;
    Ok(basis
        .into_iter()
        .map(|v| {
            let entries: Vec<Complex<T>> = (0..d2).map(|i| Complex::new(v[i], v[d2 + i])).collect();
            Matrix::unvectorize(&entries, dim).hermitian_part()
        })
        .collect())
}

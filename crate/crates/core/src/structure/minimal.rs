use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::commutant::hermitian_spanning_set;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, orthonormalize_span};
use crate::matrix::Matrix;
use crate::random::gaussian;
use crate::scalar::Real;
use crate::span::{OperatorSpan, SpanKind};
use crate::structure::projection::Projection;
use crate::tolerance::ToleranceConfig;

const FAMILY_STREAM: u64 = 0x6d696e;
const MAX_REROLLS: usize = 3;

/// How Part I picks the Hermitian element whose spectral projections split a range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalStrategy {
    /// Deterministic: the first non-scalar element of the compressed Hermitian basis,
    /// recursing into every non-minimal spectral projection.
    PaperRecursive,
    /// One seeded random combination of the Hermitian basis; recursion only when a
    /// spectral projection fails the minimality test.
    #[default]
    RandomizedGeneric,
}

/// Mutually orthogonal minimal projections of the commutant summing to `I`.
#[derive(Debug, Clone)]
pub struct MinimalFamily<T: Real> {
    pub projections: Vec<Projection<T>>,
}

impl<T: Real> MinimalFamily<T> {
    pub fn len(&self) -> usize {
        self.projections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projections.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.projections.iter().map(Projection::rank).collect()
    }

    /// `‖Σ Pᵢ − I‖` and the largest `‖PᵢPⱼ‖` over `i ≠ j`.
    pub fn residuals(&self) -> (T, T) {
        let dim = self.projections.first().map_or(0, Projection::dim);
        let mut sum = Matrix::zeros(dim, dim);
        let mut overlap = T::zero();
        for (i, p) in self.projections.iter().enumerate() {
            sum += p.matrix();
            for q in &self.projections[i + 1..] {
                overlap = overlap.max((&p.range().adjoint() * q.range()).norm());
            }
        }
        (sum.dist(&Matrix::identity(dim)), overlap)
    }
}

fn compress<T: Real>(ops: &[Matrix<T>], w: &Matrix<T>) -> Vec<Matrix<T>> {
    let wa = w.adjoint();
    ops.iter().map(|b| &(&wa * b) * w).collect()
}

/// `‖X − (tr X / r)·I‖` for an `r × r` matrix.
fn scalar_residual<T: Real>(x: &Matrix<T>) -> T {
    let r = x.nrows();
    if r == 0 {
        return T::zero();
    }
    let lambda = x.trace().scale(T::one() / T::from_usize_lossy(r));
    x.dist(&Matrix::identity(r).scale(lambda))
}

fn check_compatible<T: Real>(span: &OperatorSpan<T>, p: &Projection<T>, tol: &ToleranceConfig<T>) -> Result<()> {
    if p.dim() != span.dim() {
        return Err(Error::DimensionMismatch {
            expected: span.dim(),
            found: p.dim(),
        });
    }
    let limit = tol.check_tol(span.dim());
    let inside = span.residual(p.matrix());
    if inside <= limit {
        return Ok(());
    }
    let commuting = span
        .basis()
        .iter()
        .map(|b| p.matrix().commutator(b).norm())
        .fold(T::zero(), T::max);
    if commuting <= limit {
        return Ok(());
    }
    Err(Error::NotCompatible {
        residual: inside.min(commuting).as_f64(),
    })
}

/// Orthonormal basis of `{PBP : B ∈ span}` on the full space.
///
/// `P` must either lie in the span or commute with all of it.
pub fn compress_span<T: Real>(
    span: &OperatorSpan<T>,
    p: &Projection<T>,
    tol: &ToleranceConfig<T>,
) -> Result<OperatorSpan<T>> {
    check_compatible(span, p, tol)?;
    let w = p.range();
    let small = orthonormalize_span(&compress(span.basis(), w), tol)?;
    let basis = small
        .basis()
        .iter()
        .map(|x| &(w * x) * &w.adjoint())
        .collect();
    Ok(OperatorSpan::from_orthonormal(span.dim(), basis, SpanKind::Compression))
}

/// `P` is minimal in the commutant iff `PBP ∈ ℂP` for every basis element `B`.
pub fn is_minimal<T: Real>(p: &Projection<T>, commutant: &OperatorSpan<T>, tol: &ToleranceConfig<T>) -> Result<bool> {
    let residual = commutant.residual(p.matrix());
    if residual > tol.check_tol(commutant.dim()) {
        return Err(Error::NotInCommutant {
            residual: residual.as_f64(),
        });
    }
    let limit = tol.check_tol(commutant.dim());
    Ok(compress(commutant.basis(), p.range())
        .iter()
        .all(|x| scalar_residual(x) <= limit))
}

struct Splitter<'a, T: Real> {
    herm: &'a [Matrix<T>],
    tol: &'a ToleranceConfig<T>,
    strategy: MinimalStrategy,
    rng: ChaCha8Rng,
    limit: T,
}

impl<T: Real> Splitter<'_, T> {
    /// Splits the range of `w` into minimal pieces, appending them in spectral order.
    fn split(&mut self, w: Matrix<T>, out: &mut Vec<Matrix<T>>) -> Result<()> {
        let compressed = compress(self.herm, &w);
        let non_scalar: Vec<&Matrix<T>> = compressed
            .iter()
            .filter(|x| scalar_residual(x) > self.limit)
            .collect();
        if non_scalar.is_empty() {
            out.push(w);
            return Ok(());
        }
        let pieces = self.spectral_pieces(&compressed, non_scalar[0])?;
        for v in pieces {
            self.split(&w * &v, out)?;
        }
        Ok(())
    }

    /// Eigenspace bases (in the compressed coordinates) of the chosen element.
    fn spectral_pieces(&mut self, compressed: &[Matrix<T>], fallback: &Matrix<T>) -> Result<Vec<Matrix<T>>> {
        if self.strategy == MinimalStrategy::RandomizedGeneric {
            for _ in 0..MAX_REROLLS {
                let r = compressed[0].nrows();
                let mut t = Matrix::zeros(r, r);
                for x in compressed {
                    let c: T = gaussian(&mut self.rng);
                    t += &x.scale_real(c);
                }
                let sys = hermitian_eigensystem(&t.hermitian_part(), self.tol)?;
                if sys.cluster_count() > 1 {
                    return Ok((0..sys.cluster_count()).map(|k| sys.cluster_basis(k)).collect());
                }
            }
        }
        let sys = hermitian_eigensystem(&fallback.hermitian_part(), self.tol)?;
        if sys.cluster_count() < 2 {
            return Err(Error::Inconsistent {
                check: "minimal family",
                detail: "non-scalar element has a single eigenvalue cluster".into(),
            });
        }
        Ok((0..sys.cluster_count()).map(|k| sys.cluster_basis(k)).collect())
    }
}

/// The maximal family of mutually orthogonal minimal projections in the commutant.
///
/// The ranges are unique up to unitaries inside each multiplicity space; the central
/// projections obtained by summing linked members are unique.
pub fn minimal_family<T: Real>(
    commutant: &OperatorSpan<T>,
    tol: &ToleranceConfig<T>,
    strategy: MinimalStrategy,
) -> Result<MinimalFamily<T>> {
    let dim = commutant.dim();
    if dim == 0 {
        return Err(Error::EmptyInput("zero-dimensional span"));
    }
    let id = Matrix::identity(dim);
    let residual = commutant.residual(&id);
    if residual > tol.check_tol(dim) {
        return Err(Error::NotInCommutant {
            residual: residual.as_f64(),
        });
    }
    let herm = hermitian_spanning_set(commutant, tol)?;
    let mut splitter = Splitter {
        herm: &herm,
        tol,
        strategy,
        rng: tol.rng(FAMILY_STREAM),
        limit: tol.check_tol(dim),
    };
    let mut ranges = Vec::new();
    splitter.split(id, &mut ranges)?;
    Ok(MinimalFamily {
        projections: ranges.into_iter().map(Projection::from_range).collect(),
    })
}

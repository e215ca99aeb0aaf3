use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::hs_inner_unchecked;
use crate::matrix::Matrix;
use crate::scalar::{Complex, Real};

/// What an [`OperatorSpan`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanKind {
    Span,
    Commutant,
    FixedPoints,
    Algebra,
    Compression,
}

/// A subspace of `dim × dim` operators held as a Hilbert–Schmidt orthonormal basis.
#[derive(Debug, Clone)]
pub struct OperatorSpan<T: Real> {
    dim: usize,
    basis: Vec<Matrix<T>>,
    kind: SpanKind,
}

impl<T: Real> OperatorSpan<T> {
    /// The caller guarantees orthonormality.
    pub(crate) fn from_orthonormal(dim: usize, basis: Vec<Matrix<T>>, kind: SpanKind) -> Self {
        debug_assert!(basis.iter().all(|b| b.nrows() == dim && b.ncols() == dim));
        Self { dim, basis, kind }
    }

    pub fn empty(dim: usize, kind: SpanKind) -> Self {
        Self::from_orthonormal(dim, Vec::new(), kind)
    }

    /// Side length of the operators in the span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Complex dimension of the span.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: SpanKind) -> Self {
        self.kind = kind;
        self
    }

    /// Coordinates `⟨Bᵢ, M⟩` of `M` in the orthonormal basis.
    pub fn coefficients(&self, m: &Matrix<T>) -> Vec<Complex<T>> {
        self.basis.iter().map(|b| hs_inner_unchecked(b, m)).collect()
    }

    /// Orthogonal projection of `M` onto the span.
    pub fn project(&self, m: &Matrix<T>) -> Matrix<T> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (b, c) in self.basis.iter().zip(self.coefficients(m)) {
            if !c.is_zero() {
                out += &b.scale(c);
            }
        }
        out
    }

    /// `‖M − proj(M)‖`.
    pub fn residual(&self, m: &Matrix<T>) -> T {
        m.dist(&self.project(m))
    }

    /// Largest residual of either basis projected onto the other span.
    ///
    /// Zero (up to rounding) exactly when the spans coincide.
    pub fn distance(&self, other: &Self) -> T {
        let fwd = self.basis.iter().map(|b| other.residual(b));
        let bwd = other.basis.iter().map(|b| self.residual(b));
        let mut worst = fwd.chain(bwd).fold(T::zero(), T::max);
        if self.dim != other.dim {
            worst = T::one();
        }
        worst
    }

    /// `‖G − I‖` for the Gram matrix of the basis.
    pub fn gram_residual(&self) -> T {
        let mut acc = T::zero();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = hs_inner_unchecked(a, b);
                let target = if i == j { T::one() } else { T::zero() };
                acc = acc + (g - Complex::new(target, T::zero())).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Largest `‖B† − proj(B†)‖` over the basis.
    pub fn dagger_residual(&self) -> T {
        self.basis
            .iter()
            .map(|b| self.residual(&b.adjoint()))
            .fold(T::zero(), T::max)
    }
}

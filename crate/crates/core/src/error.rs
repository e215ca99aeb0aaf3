use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Residuals are reported as `f64` whatever the working precision.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not normal (residual {residual:.3e})")]
    NotNormal { residual: f64 },

    #[error("matrix is not an orthogonal projection (residual {residual:.3e})")]
    NotProjection { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error(
        "exp(i·) is not injective on the spectrum of operator {op_index}: \
         eigenvalues {first} and {second} differ by a multiple of 2π"
    )]
    InjectivityViolation {
        op_index: usize,
        first: String,
        second: String,
    },

    #[error(
        "channel is not unital (‖ΣAₖAₖ† − I‖ = {deviation:.3e}); the fixed-point and commutant \
         coincide only for unital channels. Unitize the noise operators first \
         (exp(iTₖ)/√n for normal Tₖ) and analyze the resulting channel"
    )]
    NotUnital { deviation: f64 },

    #[error("Kraus operators are not trace preserving (‖ΣAₖ†Aₖ − I‖ = {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("operator span is not closed under adjoints (residual {residual:.3e})")]
    NotDaggerClosed { residual: f64 },

    #[error("operator does not lie in the commutant (residual {residual:.3e})")]
    NotInCommutant { residual: f64 },

    #[error("projection does not commute with the span (residual {residual:.3e})")]
    NotCompatible { residual: f64 },

    #[error("signature link test needs rank-one projections, found rank {rank}")]
    SignatureRequiresRankOne { rank: usize },

    #[error("no nonzero commutant corner links member {member} to the rest of its class")]
    NoCorner { member: usize },

    #[error("subset enumeration over {members} equal-rank projections is too large")]
    EnumerationTooLarge { members: usize },

    #[error("internal consistency check `{check}` failed: {detail}")]
    Inconsistent { check: &'static str, detail: String },

    #[error("state leaks out of the code space (residual {leakage:.3e})")]
    SupportLeakage { leakage: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid block pattern: {0}")]
    InvalidPattern(String),

    #[error("channel spec: {0}")]
    Spec(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

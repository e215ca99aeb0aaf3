//! Noise commutants and Wedderburn structure of unital quantum channels.
//!
//! The crate is generic over the real scalar (`f32` or `f64`). The aliases at
//! the crate root fix `f64`, which is what every default path uses.

pub mod builders;
pub mod channel;
pub mod commutant;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod noiseless;
pub mod random;
pub mod scalar;
pub mod span;
pub mod structure;
pub mod tolerance;

pub use channel::{ChannelSpec, KrausChannel, ProjectionStatus};
pub use commutant::{algebra_basis, commutant_basis, fixed_point_basis, hermitian_spanning_set};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigensystem, hs_inner, matrix_exp_hermitian, nullspace, orthonormalize_span,
    spectral_projections, HermitianEigenSystem,
};
pub use matrix::Matrix;
pub use noiseless::{
    decode, encode, noiseless_components, planted_channel, trace_distance, verify_noiseless,
    verify_structure, DensityMatrix, Diagnostic, NoiselessComponent, NoiselessKind, Pattern, VerifyReport,
};
pub use scalar::{Complex, Real};
pub use span::{OperatorSpan, SpanKind};
pub use structure::{
    analyze, analyze_with, compress_span, detect_links, is_minimal, joint_eigenvalue_signature,
    matrix_units, minimal_family, structure_string, structuring_unitary, AnalyzeOptions, LinkMethod,
    LinkedClass, MatrixUnitSystem, MinimalFamily, MinimalStrategy, Projection, StructureView,
    WedderburnComponent, WedderburnStructure,
};
pub use tolerance::ToleranceConfig;

/// Double-precision aliases.
pub type CMatrix = Matrix<f64>;
pub type C64 = Complex<f64>;
pub type Tolerance = ToleranceConfig<f64>;
pub type Channel = KrausChannel<f64>;
pub type Span = OperatorSpan<f64>;
pub type Structure = WedderburnStructure<f64>;

//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use faer::traits::RealField;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Complex scalar over a real field `T`.
pub type Complex<T> = num_complex::Complex<T>;

/// Real floating-point type the whole pipeline is generic over.
///
/// Implemented for `f32` and `f64`. The backend (`faer`) needs `RealField`,
/// the rest of the code uses the `num-traits` float API.
pub trait Real:
    RealField + Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a literal; every `f64` literal used by the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits in a float")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

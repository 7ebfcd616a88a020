//! Scalar abstraction for the floating-point kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable by the spectral, certificate, rounding and
/// SDP modules. Implemented by `f32` and `f64`; the pinned tolerances in
/// this crate assume `f64` precision.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` constant into the working scalar.
#[inline]
pub fn rf<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Converts an integer count into the working scalar.
#[inline]
pub fn ri<F: Real>(n: usize) -> F {
    F::from_usize(n).expect("count representable in scalar type")
}

//! Scalar abstraction.
//!
//! Everything in this crate is generic over the floating-point type through
//! [`Real`]. `f64` is the working precision of the CLI and of all pinned
//! tolerances; `f32` is available for callers that want it (with
//! correspondingly looser solver options).

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, NumAssign};

/// Floating-point scalar (`f32` or `f64`) the model is generic over.
pub trait Real: Float + FloatConst + NumAssign + Debug + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the scalar type (exact for `f64`).
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from(x).expect("constant representable in scalar type")
}

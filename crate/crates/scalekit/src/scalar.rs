//! Floating-point scalar abstraction.
//!
//! The numeric kernels (log-domain accumulation, grid convolution, bump
//! profiles) are generic over this trait so they work with `f32` and `f64`
//! alike; the crate root exports `f64`-based aliases for everyday use.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the generic numeric kernels.
pub trait Scalar: Float + FromPrimitive + std::fmt::Debug + 'static {
    /// Lossy conversion to `f64` for reporting.
    fn to_f64_lossy(self) -> f64;
}

impl Scalar for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

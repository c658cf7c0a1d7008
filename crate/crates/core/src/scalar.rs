//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count or index.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    /// An absolute tolerance that never drops below a few ulps of one.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::of(x).max(Self::epsilon() * Self::of(64.0))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `-x log2 x` with the convention `0 log 0 = 0`; `x` is clamped to `[0, 1]`.
#[inline]
pub fn xlog2x<T: Real>(x: T) -> T {
    let x = x.max(T::zero()).min(T::one());
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}

/// Binary entropy in bits.
#[inline]
pub fn binary_entropy<T: Real>(p: T) -> T {
    xlog2x(p) + xlog2x(T::one() - p)
}

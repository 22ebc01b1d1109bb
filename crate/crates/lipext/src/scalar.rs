//! Scalar abstraction: every algorithm in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar: f32 or f64.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + Debug + Display + Sum + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// Tolerance constants such as `1e-12` are below f32 resolution; floor them
/// at a small multiple of the type's epsilon so the invariants stay checkable
/// for every scalar type.
#[inline]
pub(crate) fn scaled_const<T: Real>(c: f64) -> T {
    let eps_floor = T::epsilon() * real::<T>(16.0);
    real::<T>(c).max(eps_floor)
}

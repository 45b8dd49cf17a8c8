//! Scalar traits shared by the exact and the floating-point layers.
//!
//! Group-ring algebra is generic over [`Coefficient`] (exact rationals in
//! practice, floats or machine integers where convenient). The l^p analysis
//! is generic over [`Real`], i.e. `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Coefficients of group-ring elements.
pub trait Coefficient:
    Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + ToPrimitive + FromStr + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + PartialOrd
        + Signed
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Floating-point scalars used for norms, operators and minimization.
pub trait Real: nalgebra::RealField + Copy + FromPrimitive + ToPrimitive + Display {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts any coefficient into a real scalar. Panics only if the value is
/// not representable, which cannot happen for the bounded integers that
/// appear in catalog operators.
pub fn to_real<S: Coefficient, T: Real>(value: &S) -> T {
    let v = value.to_f64().expect("coefficient representable as f64");
    T::from_f64(v).expect("f64 representable in target scalar")
}

/// Lifts an `f64` constant into `T`.
pub fn real<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("f64 representable in target scalar")
}

//! Scalar abstraction for all floating-point quantities (coordinates,
//! ranges, metric values, statistics).
//!
//! Everything numeric in this crate is generic over [`Scalar`], so the same
//! code runs in `f32` or `f64`. Graph-structural decisions never depend on
//! the scalar type: the link-removal algorithm compares clustering values
//! in exact rational arithmetic (see [`crate::exact`]), so an `f32` run
//! removes exactly the same links as an `f64` run.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::distr::uniform::SampleUniform;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Serialize
    + DeserializeOwned
    + Copy
    + Send
    + Sync
    + Debug
    + Display
    + 'static
{
    /// Lossless-enough conversion from a count. Panics if the count does
    /// not fit, which cannot happen for the node/edge counts in scope.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as scalar")
    }

    /// Conversion from an `f64` constant (tolerances, z-scores).
    fn from_f64c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable as scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

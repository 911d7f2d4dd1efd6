//! Floating-point abstraction shared by the geometric layers of the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};
use serde::{de::DeserializeOwned, Serialize};

/// Real scalar used by fields, energies and certificates.
///
/// Implemented for `f32` and `f64`. Tolerances baked into the crate are tuned
/// for `f64`; `f32` runs the same code paths at reduced accuracy.
pub trait Scalar:
    Float + FloatConst + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    /// Converts an `f64` literal (always representable up to rounding).
    #[inline]
    fn of(x: f64) -> Self {
        Self::from(x).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `sin(x)/x` with the removable singularity filled in.
#[inline]
pub(crate) fn sinc<T: Scalar>(x: T) -> T {
    if x.abs() < T::of(1e-4) {
        let x2 = x * x;
        T::one() - x2 / T::of(6.0) + x2 * x2 / T::of(120.0)
    } else {
        x.sin() / x
    }
}

/// Neumaier-compensated running sum; order-deterministic.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanSum<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> KahanSum<T> {
    pub(crate) fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.comp
    }
}

//! Material description, bend angle and the energy ledger of a field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// Geometry and material of the sample: thickness `h`, half-length `L`,
/// ply count `N` and interface toughness `gamma` (a length, in 2D).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterialSpec<T> {
    pub h: T,
    #[serde(rename = "L")]
    pub l: T,
    #[serde(rename = "N")]
    pub n: usize,
    pub gamma: T,
}

impl<T: Scalar> MaterialSpec<T> {
    pub fn new(h: T, l: T, n: usize, gamma: T) -> Result<Self> {
        let spec = Self { h, l, n, gamma };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the invariants; deserialized specs go through this too.
    pub fn validate(&self) -> Result<()> {
        let finite = self.h.is_finite() && self.l.is_finite() && self.gamma.is_finite();
        if !finite {
            return Err(Error::InvalidSpec("h, L and gamma must be finite".into()));
        }
        if !(self.h > T::zero()) {
            return Err(Error::InvalidSpec(format!("h = {} must be positive", self.h)));
        }
        if !(self.l > T::zero()) {
            return Err(Error::InvalidSpec(format!("L = {} must be positive", self.l)));
        }
        if !(self.gamma > T::zero()) {
            return Err(Error::InvalidSpec(format!("gamma = {} must be positive", self.gamma)));
        }
        if self.n < 1 {
            return Err(Error::InvalidSpec("N must be at least 1".into()));
        }
        if self.h > self.l / T::of(4.0) {
            return Err(Error::InvalidSpec(format!("h = {} exceeds L/4 = {}", self.h, self.l / T::of(4.0))));
        }
        Ok(())
    }

    /// Grid spacing `h/N` of admissible interfaces.
    pub fn ply(&self) -> T {
        self.h / T::of_usize(self.n)
    }
}

/// Imposed bend angle `alpha` in `(0, pi/2]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BendAngle<T>(T);

impl<T: Scalar> BendAngle<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if alpha > T::zero() && alpha <= T::FRAC_PI_2() {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!("bend angle {alpha} outside (0, pi/2]")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Elastic and delamination parts of a measured energy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown<T> {
    pub elastic: T,
    pub delamination: T,
    pub total: T,
    pub jump_lengths: Vec<T>,
}

impl<T: Scalar> EnergyBreakdown<T> {
    pub fn new(elastic: T, gamma: T, jump_lengths: Vec<T>) -> Self {
        let mut len = crate::scalar::KahanSum::new();
        for &l in &jump_lengths {
            len.add(l);
        }
        let delamination = gamma * len.value();
        Self { elastic, delamination, total: elastic + delamination, jump_lengths }
    }

    pub fn purely_elastic(elastic: T) -> Self {
        Self::new(elastic, T::zero(), Vec::new())
    }

    /// Total delaminated length over all interfaces.
    pub fn delaminated_length(&self) -> T {
        self.jump_lengths.iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn scaled(&self, k: T) -> Self {
        Self {
            elastic: self.elastic * k,
            delamination: self.delamination * k,
            total: self.total * k,
            jump_lengths: self.jump_lengths.iter().map(|&l| l * k).collect(),
        }
    }
}

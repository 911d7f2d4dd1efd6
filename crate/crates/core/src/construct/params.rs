use serde::{Deserialize, Serialize};

use crate::angles::{beta_eq_default, kinematics, FoldKinematics};
use crate::error::{constraint, domain, Error, Result};
use crate::{MaterialSpec, Scalar};

/// Relative slack on the closed inequalities of the parameter constraints.
const REL_SLACK: f64 = 1e-12;

/// Free parameters of the rounded multilayer fold.
///
/// `boundaries` holds `b_0 = 0 < b_1 < ... < b_n = h` (so `n + 1` entries).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams<T> {
    pub beta: T,
    pub n: usize,
    pub l_arc: T,
    pub boundaries: Vec<T>,
}

impl<T: Scalar> ConstructionParams<T> {
    /// Parameters with boundaries from [`choose_boundaries`].
    pub fn new(spec: &MaterialSpec<T>, beta: T, n: usize, l_arc: T) -> Result<Self> {
        let boundaries = choose_boundaries(spec, n)?;
        Ok(Self { beta, n, l_arc, boundaries })
    }

    pub fn thicknesses(&self) -> Vec<T> {
        self.boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Interval of admissible `l_arc` for this `beta` and `n`: `[2 beta h / n, L/8]`.
    pub fn l_arc_range(spec: &MaterialSpec<T>, beta: T, n: usize) -> (T, T) {
        (T::of(2.0) * beta * spec.h / T::of_usize(n), spec.l / T::of(8.0))
    }

    /// Shape checks that do not depend on the bend angle.
    pub(crate) fn check_shape(&self, spec: &MaterialSpec<T>) -> Result<()> {
        if self.n < 1 || self.n > spec.n {
            return Err(constraint(format!("n = {} outside 1..=N = {}", self.n, spec.n)));
        }
        if self.boundaries.len() != self.n + 1 {
            return Err(constraint(format!(
                "{} boundaries given, n + 1 = {} expected",
                self.boundaries.len(),
                self.n + 1
            )));
        }
        if self.boundaries[0] != T::zero() || self.boundaries[self.n] != spec.h {
            return Err(constraint("boundaries must start at 0 and end at h"));
        }
        if !(self.l_arc > T::zero()) || !self.l_arc.is_finite() {
            return Err(constraint(format!("l_arc = {} must be positive", self.l_arc)));
        }
        let ply = spec.ply();
        for (j, w) in self.boundaries.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(constraint(format!("boundaries not strictly increasing at j = {j}")));
            }
        }
        for (j, &b) in self.boundaries.iter().enumerate().take(self.n).skip(1) {
            let k = b / ply;
            if (k - k.round()).abs() > T::of(1e-9) {
                return Err(constraint(format!("b_{j} = {b} is not a multiple of h/N")));
            }
        }
        Ok(())
    }

    /// Full admissibility for bend angle `alpha`; returns the fold kinematics.
    ///
    /// Each error names the inequality that fails.
    pub fn check(&self, spec: &MaterialSpec<T>, alpha: T) -> Result<FoldKinematics<T>> {
        self.check_shape(spec)?;
        if !(alpha > T::zero()) || alpha > T::FRAC_PI_4() {
            return Err(constraint(format!(
                "alpha = {alpha} outside (0, pi/4]; larger angles use two half-angle folds"
            )));
        }
        if !(self.beta > alpha) {
            return Err(Error::Admissibility {
                beta: self.beta.to_f64_lossy(),
                beta_eq: beta_eq_default(alpha)?.to_f64_lossy(),
            });
        }
        let beq = beta_eq_default(alpha)?;
        if self.beta > beq * (T::one() + T::of(REL_SLACK)) {
            return Err(Error::Admissibility { beta: self.beta.to_f64_lossy(), beta_eq: beq.to_f64_lossy() });
        }
        let kin = kinematics(alpha, self.beta)?;
        let slack = T::one() + T::of(REL_SLACK);
        let two_over_n = T::of(2.0) * spec.h / T::of_usize(self.n);
        for (j, hj) in self.thicknesses().into_iter().enumerate() {
            if hj > two_over_n * slack {
                return Err(constraint(format!("h_{j} = {hj} exceeds 2h/n = {two_over_n}")));
            }
        }
        let (lo, hi) = Self::l_arc_range(spec, self.beta, self.n);
        if self.l_arc < lo / slack {
            return Err(constraint(format!("l_arc = {} below 2 beta h / n = {lo}", self.l_arc)));
        }
        if self.l_arc > hi * slack {
            return Err(constraint(format!("l_arc = {} above L/8 = {hi}", self.l_arc)));
        }
        let width = kin.zeta * spec.h;
        if width > spec.l / T::of(4.0) * slack {
            return Err(constraint(format!("down-slope zeta h = {width} exceeds L/4 = {}", spec.l / T::of(4.0))));
        }
        Ok(kin)
    }
}

/// Interface ordinates for `n` layers on the `h/N` grid, nearest to the equal
/// partition with ties going to the lower grid point.
pub fn choose_boundaries<T: Scalar>(spec: &MaterialSpec<T>, n: usize) -> Result<Vec<T>> {
    if n < 1 || n > spec.n {
        return Err(domain(format!("layer count n = {n} outside 1..=N = {}", spec.n)));
    }
    let big_n = spec.n;
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::zero());
    for j in 1..n {
        // round(j N / n) with halves rounded down, in integers
        let k = (2 * j * big_n + n - 1) / (2 * n);
        out.push(T::of_usize(k) * spec.h / T::of_usize(big_n));
    }
    out.push(spec.h);
    Ok(out)
}

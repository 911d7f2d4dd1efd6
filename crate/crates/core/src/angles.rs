//! Fold kinematics: `f_alpha(beta)`, the touching angle `beta_eq(alpha)`, and
//! the slope/opening factors `zeta`, `d` of the piecewise-affine fold.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::Scalar;

/// Default bracket width for [`beta_eq`], in radians.
pub const BETA_EQ_TOL: f64 = 1e-12;

/// Relative slack on `d cos(beta) >= 1`, absorbing the rounding of `beta_eq` itself.
pub const ADMISSIBILITY_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldKinematics<T> {
    pub alpha: T,
    pub beta: T,
    pub zeta: T,
    pub d: T,
    pub admissible: bool,
}

/// `cos(alpha) - cos(beta)` without cancellation.
#[inline]
pub(crate) fn cos_gap<T: Scalar>(alpha: T, beta: T) -> T {
    let half = T::of(0.5);
    T::of(2.0) * ((alpha + beta) * half).sin() * ((beta - alpha) * half).sin()
}

/// `f_alpha(beta) = sin((alpha+beta)/2) / sin((beta-alpha)/2) * cos(beta)`.
///
/// Strictly decreasing in `beta`, vanishing at `pi/2`.
pub fn f_alpha<T: Scalar>(alpha: T, beta: T) -> Result<T> {
    if !(alpha > T::zero()) || !(beta > alpha) || beta > T::FRAC_PI_2() {
        return Err(domain(format!("f_alpha needs 0 < alpha < beta <= pi/2, got alpha={alpha}, beta={beta}")));
    }
    let half = T::of(0.5);
    Ok(((alpha + beta) * half).sin() / ((beta - alpha) * half).sin() * beta.cos())
}

/// Root of `f_alpha(beta) = 1` by bisection, to bracket width `tol`.
///
/// Returns the lower end of the final bracket, where `f_alpha > 1` still holds,
/// so the touching fold itself passes the admissibility test.
pub fn beta_eq<T: Scalar>(alpha: T, tol: T) -> Result<T> {
    if !(alpha > T::zero()) || !(alpha < T::FRAC_PI_2()) {
        return Err(domain(format!("beta_eq needs alpha in (0, pi/2), got {alpha}")));
    }
    if !(tol > T::zero()) {
        return Err(domain(format!("beta_eq tolerance must be positive, got {tol}")));
    }
    let eps = T::of(1e-14) * T::PI();
    let mut lo = alpha + eps;
    let mut hi = T::FRAC_PI_2() - eps;
    if !(lo < hi) {
        return Err(domain(format!("alpha = {alpha} leaves an empty bracket")));
    }
    // f(lo) > 1 > f(hi) holds for every alpha in range: f blows up at alpha and vanishes at pi/2.
    let half = T::of(0.5);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break; // bracket is one ulp wide
        }
        if f_alpha(alpha, mid)? > T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn beta_eq_default<T: Scalar>(alpha: T) -> Result<T> {
    beta_eq(alpha, T::of(BETA_EQ_TOL))
}

/// Down-slope factor `zeta = sin(alpha) / (cos(alpha) - cos(beta))`.
pub fn zeta<T: Scalar>(alpha: T, beta: T) -> T {
    alpha.sin() / cos_gap(alpha, beta)
}

/// `zeta`, `d` and the admissibility flag for `0 < alpha < beta < pi/2`.
pub fn kinematics<T: Scalar>(alpha: T, beta: T) -> Result<FoldKinematics<T>> {
    if !(alpha > T::zero()) || !(beta > alpha) || !(beta < T::FRAC_PI_2()) {
        return Err(domain(format!("kinematics needs 0 < alpha < beta < pi/2, got alpha={alpha}, beta={beta}")));
    }
    let gap = cos_gap(alpha, beta);
    let z = alpha.sin() / gap;
    let d = (T::one() - alpha.cos() * beta.cos() + alpha.sin() * beta.sin()) / gap;
    let admissible = d * beta.cos() >= T::one() - T::of(ADMISSIBILITY_SLACK);
    Ok(FoldKinematics { alpha, beta, zeta: z, d, admissible })
}

/// Smallest `beta` with `zeta(alpha, beta) * h <= max_width`, i.e. the shallowest
/// fold whose down-slope still fits; `None` if even `beta -> pi/2` is too wide.
pub fn beta_for_width<T: Scalar>(alpha: T, h: T, max_width: T) -> Option<T> {
    // cos(beta) = cos(alpha) - h sin(alpha) / max_width
    let c = alpha.cos() - h * alpha.sin() / max_width;
    if c <= T::zero() {
        None
    } else {
        Some(c.min(T::one()).acos())
    }
}

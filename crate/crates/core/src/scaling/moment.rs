use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{branch_values, upper_bound, RegimeLabel};
use super::optimize::{optimize_construction_with, ConstructionKind, OptimizerSettings};
use crate::error::{Error, Result};
use crate::Spec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMode {
    /// `E = min{elastic, sum of the delaminated monomials}`.
    Analytic,
    /// `E` = optimized measured construction energy.
    Measured,
}

impl std::str::FromStr for MomentMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(MomentMode::Analytic),
            "measured" => Ok(MomentMode::Measured),
            _ => Err(Error::Domain(format!("unknown moment mode '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub alpha: f64,
    pub energy: f64,
    pub moment: f64,
    /// Label of the upper bound's min/max form.
    pub regime: RegimeLabel,
    /// Whether the energy is on its delaminated branch.
    pub delaminated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentCurve {
    pub mode: MomentMode,
    pub rows: Vec<MomentRow>,
    /// Elastic/delaminated crossing inside the grid, where the moment jumps.
    pub crossing: Option<f64>,
}

/// Analytic delaminated energy: the four delaminated monomials added up.
///
/// Their sum has the same scaling as their maximum but is smooth, so the only
/// kink of `min{elastic, sum}` is the crossing with the elastic branch.
pub fn delaminated_sum(spec: &Spec, alpha: f64) -> f64 {
    let b = branch_values(spec, alpha);
    b.sharp_fold + b.localized_full + b.small_angle_total + b.total_delam
}

fn elastic(spec: &Spec, alpha: f64) -> f64 {
    alpha * alpha * spec.h.powi(3) / spec.l
}

fn bisect(mut lo: f64, mut hi: f64, rel_tol: f64, delaminated: impl Fn(f64) -> bool) -> f64 {
    // delaminated(lo) is false, delaminated(hi) is true
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= rel_tol * hi {
            break;
        }
        if delaminated(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Domain("moment curve needs at least two grid points".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("alpha grid must be strictly increasing".into()));
    }
    if !(grid[0] > 0.0) || grid[grid.len() - 1] > std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain("alpha grid must lie in (0, pi/2]".into()));
    }
    Ok(())
}

/// Energy and moment along `grid`; the moment is a central difference with step
/// `1e-3` of the local spacing, switched to one-sided next to the crossing.
pub fn moment_curve(spec: &Spec, grid: &[f64], mode: MomentMode) -> Result<MomentCurve> {
    moment_curve_with(spec, grid, mode, &OptimizerSettings::default())
}

pub fn moment_curve_with(spec: &Spec, grid: &[f64], mode: MomentMode, st: &OptimizerSettings) -> Result<MomentCurve> {
    spec.validate()?;
    validate_grid(grid)?;
    let energy = |a: f64| -> Result<(f64, bool)> {
        match mode {
            MomentMode::Analytic => {
                let (e, d) = (elastic(spec, a), delaminated_sum(spec, a));
                Ok(if d < e { (d, true) } else { (e, false) })
            }
            MomentMode::Measured => {
                let o = optimize_construction_with(spec, a, st)?;
                Ok((o.breakdown.total, o.kind != ConstructionKind::Plate))
            }
        }
    };
    let states: Vec<(f64, bool)> = grid.par_iter().map(|&a| energy(a)).collect::<Result<_>>()?;
    let mut crossing = None;
    for k in 1..grid.len() {
        if !states[k - 1].1 && states[k].1 {
            // measured energies are optimizer outputs; resolving them below 1e-6 buys nothing
            let tol = if mode == MomentMode::Analytic { 1e-14 } else { 1e-6 };
            crossing = Some(bisect(grid[k - 1], grid[k], tol, |a| energy(a).map(|s| s.1).unwrap_or(false)));
            break;
        }
    }
    let rows: Vec<MomentRow> = (0..grid.len())
        .into_par_iter()
        .map(|k| -> Result<MomentRow> {
            let a = grid[k];
            let gap = match (k.checked_sub(1).map(|j| a - grid[j]), grid.get(k + 1).map(|b| b - a)) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => a,
            };
            let d = 1e-3 * gap;
            let (lo, hi) = match crossing {
                Some(c) if a - d < c && c <= a => (a, (a + d).min(std::f64::consts::FRAC_PI_2)),
                Some(c) if a < c && c < a + d => (a - d, a),
                _ => (a - d, (a + d).min(std::f64::consts::FRAC_PI_2)),
            };
            let moment = (energy(hi)?.0 - energy(lo)?.0) / (hi - lo);
            Ok(MomentRow {
                alpha: a,
                energy: states[k].0,
                moment,
                regime: upper_bound(spec, a)?.1,
                delaminated: states[k].1,
            })
        })
        .collect::<Result<_>>()?;
    Ok(MomentCurve { mode, rows, crossing })
}

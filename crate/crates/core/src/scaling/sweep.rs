use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{lower_bound, optimal_delam_length, upper_bound, RegimeLabel};
use super::optimize::{optimize_construction_with, ConstructionKind, OptimizerSettings};
use crate::error::{Error, Result};
use crate::Spec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Alpha,
    Gamma,
    H,
    L,
    N,
}

impl SweepParam {
    fn index(self) -> usize {
        match self {
            SweepParam::Alpha => 0,
            SweepParam::Gamma => 1,
            SweepParam::H => 2,
            SweepParam::L => 3,
            SweepParam::N => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Gamma => "gamma",
            SweepParam::H => "h",
            SweepParam::L => "L",
            SweepParam::N => "N",
        }
    }

    /// Current value of this parameter at `(spec, alpha)`.
    pub fn value(self, spec: &Spec, alpha: f64) -> f64 {
        match self {
            SweepParam::Alpha => alpha,
            SweepParam::Gamma => spec.gamma,
            SweepParam::H => spec.h,
            SweepParam::L => spec.l,
            SweepParam::N => spec.n as f64,
        }
    }

    /// `(spec, alpha)` with this parameter replaced by `v` (rounded for `N`).
    pub fn apply(self, spec: &Spec, alpha: f64, v: f64) -> Result<(Spec, f64)> {
        let mut s = *spec;
        let mut a = alpha;
        match self {
            SweepParam::Alpha => a = v,
            SweepParam::Gamma => s.gamma = v,
            SweepParam::H => s.h = v,
            SweepParam::L => s.l = v,
            SweepParam::N => s.n = v.round().max(1.0) as usize,
        }
        s.validate()?;
        Ok((s, a))
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SweepParam::Alpha),
            "gamma" => Ok(SweepParam::Gamma),
            "h" => Ok(SweepParam::H),
            "L" | "l" => Ok(SweepParam::L),
            "N" | "n" => Ok(SweepParam::N),
            _ => Err(Error::Domain(format!("unknown sweep parameter '{s}'"))),
        }
    }
}

/// One-parameter log sweep that should stay inside `regime`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: Spec,
    pub alpha: f64,
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub regime: RegimeLabel,
    /// Slope tolerance; defaults to 0.05 for the elastic regime and 0.1 otherwise.
    pub tolerance: Option<f64>,
}

impl SweepSpec {
    pub fn expected_exponent(&self) -> f64 {
        self.regime.exponents()[self.param.index()]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(if self.regime == RegimeLabel::Elastic { 0.05 } else { 0.1 })
    }

    /// Log-spaced grid; integer and de-duplicated for `N`.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if self.points < 2 || !(self.lo > 0.0) || !(self.hi > self.lo) {
            return Err(Error::Domain(format!(
                "sweep needs >= 2 points on 0 < lo < hi, got {} points on [{}, {}]",
                self.points, self.lo, self.hi
            )));
        }
        let (a, b) = (self.lo.ln(), self.hi.ln());
        let mut g: Vec<f64> =
            (0..self.points).map(|i| (a + (b - a) * i as f64 / (self.points - 1) as f64).exp()).collect();
        if self.param == SweepParam::N {
            g = g.into_iter().map(f64::round).collect();
            g.dedup();
            if g.len() < 2 {
                return Err(Error::Domain("integer sweep collapses to a single N".into()));
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub alpha: f64,
    pub spec: Spec,
    pub energy: f64,
    pub kind: ConstructionKind,
    pub n: usize,
    pub label: RegimeLabel,
    pub in_regime: bool,
    pub upper_bound: f64,
    /// Conditional floor (valid for competitors with interval-shaped jump sets).
    pub lower_bound: f64,
    /// Measured delaminated half-width of the optimized field.
    pub delaminated_half_length: f64,
    /// Predicted half-width, where the length law is defined.
    pub predicted_half_length: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub param: SweepParam,
    pub regime: RegimeLabel,
    pub grid: Vec<f64>,
    pub energies: Vec<f64>,
    pub slope: f64,
    pub expected: f64,
    pub tolerance: f64,
    /// Largest residual of the log-log fit.
    pub max_residual: f64,
    /// Every point carries the declared regime label.
    pub in_regime: bool,
    pub passed: bool,
    /// `max energy / lower_bound` and its log-log slope.
    pub floor_ratio_max: f64,
    pub floor_ratio_slope: f64,
    pub upper_ratio_max: f64,
    pub points: Vec<SweepPoint>,
}

/// Least-squares line through `(ln x, ln y)`: `(slope, max |residual|)`.
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let resid = lx.iter().zip(&ly).map(|(x, y)| (y - my - slope * (x - mx)).abs()).fold(0.0, f64::max);
    (slope, resid)
}

pub fn verify_scaling(sweep: &SweepSpec) -> Result<ScalingReport> {
    verify_scaling_with(sweep, &OptimizerSettings::default())
}

pub fn verify_scaling_with(sweep: &SweepSpec, st: &OptimizerSettings) -> Result<ScalingReport> {
    let grid = sweep.grid()?;
    let points: Vec<SweepPoint> = grid
        .par_iter()
        .map(|&v| -> Result<SweepPoint> {
            let (spec, alpha) = sweep.param.apply(&sweep.base, sweep.alpha, v)?;
            let (ub, label) = upper_bound(&spec, alpha)?;
            let opt = optimize_construction_with(&spec, alpha, st)?;
            Ok(SweepPoint {
                value: v,
                alpha,
                spec,
                energy: opt.breakdown.total,
                kind: opt.kind,
                n: opt.n(),
                label,
                in_regime: label == sweep.regime,
                upper_bound: ub,
                lower_bound: lower_bound(&spec, alpha, spec.n)?,
                delaminated_half_length: opt.delaminated_half_length(),
                predicted_half_length: optimal_delam_length(&spec, alpha).ok(),
            })
        })
        .collect::<Result<_>>()?;
    let energies: Vec<f64> = points.iter().map(|p| p.energy).collect();
    let (slope, max_residual) = fit_loglog(&grid, &energies);
    let floor: Vec<f64> = points.iter().map(|p| p.energy / p.lower_bound).collect();
    let (floor_ratio_slope, _) = fit_loglog(&grid, &floor);
    let in_regime = points.iter().all(|p| p.in_regime);
    let expected = sweep.expected_exponent();
    let tolerance = sweep.tolerance();
    Ok(ScalingReport {
        param: sweep.param,
        regime: sweep.regime,
        grid,
        passed: in_regime && slope.is_finite() && (slope - expected).abs() <= tolerance,
        energies,
        slope,
        expected,
        tolerance,
        max_residual,
        in_regime,
        floor_ratio_max: floor.iter().copied().fold(0.0, f64::max),
        floor_ratio_slope,
        upper_ratio_max: points.iter().map(|p| p.energy / p.upper_bound).fold(0.0, f64::max),
        points,
    })
}

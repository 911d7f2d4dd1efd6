use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::{beta_eq_default, beta_for_width};
use crate::construct::{build_multilayer, build_plate, ConstructionParams};
use crate::energy::{elastic_energy, total_energy, QuadratureSettings};
use crate::error::{Error, Result};
use crate::{Breakdown, EnergyBreakdown, Field, Params, Spec};

/// Assumed floor on the arc-length constant of the small-angle construction.
pub const C_STAR: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// Log-grid points per coordinate scan.
    pub grid_points: usize,
    /// Coarse-to-fine rounds; each shrinks the scan window by `shrink`.
    pub rounds: usize,
    pub shrink: f64,
    /// Coordinate passes per round before moving on.
    pub max_passes: usize,
    /// Measurement used while searching.
    pub search: QuadratureSettings,
    pub search_jump_samples: usize,
    /// Measurement of the returned construction.
    pub report: QuadratureSettings,
    pub report_jump_samples: usize,
    /// Smallest `(beta - alpha) / (beta_eq - alpha)` considered.
    pub beta_floor: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            grid_points: 33,
            rounds: 3,
            shrink: 4.0,
            max_passes: 4,
            search: QuadratureSettings { nx: 16, ny_per_layer: 4 },
            search_jump_samples: 32,
            report: QuadratureSettings { nx: 256, ny_per_layer: 16 },
            report_jump_samples: 128,
            beta_floor: 1e-7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Plate,
    Multilayer,
    /// Two half-angle folds on quarter-length halves.
    TwoFold,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizedConstruction {
    pub spec: Spec,
    pub alpha: f64,
    pub kind: ConstructionKind,
    /// Fold parameters (of each fold for `TwoFold`); `None` for the plate.
    pub params: Option<Params>,
    /// Sample and angle the fold parameters refer to.
    pub fold_spec: Spec,
    pub fold_alpha: f64,
    /// Energy of the whole sample at the report settings.
    pub breakdown: Breakdown,
    /// Energies at the search settings.
    pub search_energy: f64,
    pub seed_energy: f64,
    pub plate_energy: f64,
    pub evaluations: usize,
}

impl OptimizedConstruction {
    /// Delaminated layer count (1 for the plate).
    pub fn n(&self) -> usize {
        self.params.as_ref().map_or(1, |p| p.n)
    }

    /// The field realizing the optimum (one fold of a two-fold split).
    pub fn field(&self) -> Result<Field> {
        match &self.params {
            None => build_plate(&self.spec, self.alpha),
            Some(p) => build_multilayer(&self.fold_spec, self.fold_alpha, p),
        }
    }

    /// Mean delaminated half-width over the open interfaces (0 without any).
    pub fn delaminated_half_length(&self) -> f64 {
        let ls = &self.breakdown.jump_lengths;
        if ls.is_empty() {
            0.0
        } else {
            ls.iter().sum::<f64>() / (2.0 * ls.len() as f64)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Point {
    beta: f64,
    n: usize,
    l_arc: f64,
}

#[derive(Clone, Copy, Debug)]
struct Scored {
    e: f64,
    p: Point,
}

fn key_lt(a: &Scored, b: &Scored) -> bool {
    a.e.total_cmp(&b.e)
        .then(a.p.n.cmp(&b.p.n))
        .then(a.p.beta.total_cmp(&b.p.beta))
        .then(a.p.l_arc.total_cmp(&b.p.l_arc))
        .is_lt()
}

struct Problem<'a> {
    spec: &'a Spec,
    alpha: f64,
    settings: &'a OptimizerSettings,
    beta_lo: f64,
    beta_hi: f64,
    cache: HashMap<(u64, usize, u64), f64>,
}

fn log_grid(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    if m < 2 || hi <= lo {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..m).map(|i| (a + (b - a) * i as f64 / (m - 1) as f64).exp()).collect()
}

/// Sub-window of `[lo, hi]` (log scale) centred at `c`, `1/shrink^round` of the full width.
fn window(lo: f64, hi: f64, c: f64, round: usize, shrink: f64) -> (f64, f64) {
    if round == 0 {
        return (lo, hi);
    }
    let half = 0.5 * (hi / lo).ln() / shrink.powi(round as i32);
    ((c.ln() - half).exp().max(lo), (c.ln() + half).exp().min(hi))
}

impl<'a> Problem<'a> {
    fn n_min(&self, beta: f64) -> usize {
        ((16.0 * beta * self.spec.h / self.spec.l).ceil() as usize).max(1)
    }

    fn project(&self, beta: f64, n: usize, l_arc: f64) -> Option<Point> {
        let beta = beta.clamp(self.beta_lo, self.beta_hi);
        if self.n_min(beta) > self.spec.n {
            return None;
        }
        let n = n.clamp(self.n_min(beta), self.spec.n);
        let (lo, hi) = ConstructionParams::l_arc_range(self.spec, beta, n);
        if lo > hi {
            return None;
        }
        Some(Point { beta, n, l_arc: l_arc.clamp(lo, hi) })
    }

    fn measure(spec: &Spec, alpha: f64, s: &OptimizerSettings, p: Point) -> f64 {
        let built = ConstructionParams::new(spec, p.beta, p.n, p.l_arc).and_then(|q| build_multilayer(spec, alpha, &q));
        match built {
            Ok(f) => total_energy(&f, &s.search, s.search_jump_samples).total,
            Err(_) => f64::INFINITY,
        }
    }

    fn score(&mut self, pts: &[Point]) -> Vec<Scored> {
        let key = |p: &Point| (p.beta.to_bits(), p.n, p.l_arc.to_bits());
        let mut missing: Vec<Point> = pts.iter().filter(|p| !self.cache.contains_key(&key(p))).copied().collect();
        missing.dedup_by(|a, b| key(a) == key(b));
        let (spec, alpha, s) = (self.spec, self.alpha, self.settings);
        let values: Vec<f64> = missing.par_iter().map(|&p| Self::measure(spec, alpha, s, p)).collect();
        for (p, v) in missing.iter().zip(values) {
            self.cache.insert(key(p), v);
        }
        pts.iter().map(|p| Scored { e: self.cache[&key(p)], p: *p }).collect()
    }

    fn best_of(&mut self, cur: Scored, pts: Vec<Point>) -> Scored {
        let mut best = cur;
        for c in self.score(&pts) {
            if key_lt(&c, &best) {
                best = c;
            }
        }
        best
    }

    fn seeds(&self) -> Vec<Point> {
        let (h, l, big_n, g, a) = (self.spec.h, self.spec.l, self.spec.n as f64, self.spec.gamma, self.alpha);
        let n_for = |beta: f64, la: f64| -> usize {
            let n = (beta.powf(2.0 / 3.0) * h / (g.cbrt() * la.powf(2.0 / 3.0))).ceil();
            n.min(big_n).max(1.0) as usize
        };
        let mut out = Vec::new();
        // large-angle construction: touching layers, arc at the balance length
        let la = (h.powf(1.5) / (g.sqrt() * big_n.powf(1.5))).max(std::f64::consts::PI * h).min(l / 8.0);
        let n = ((h / (g.cbrt() * la.powf(2.0 / 3.0))).ceil().min(big_n).max(1.0)) as usize;
        out.push((self.beta_hi, n, la));
        // sharp fold at beta ~ alpha^(1/3)
        let b = a.cbrt();
        out.push((b, n_for(b, b * h), b * h));
        // critical beta and arc of the small-angle analysis
        let floor = (2.0 * a).max((8.0 * C_STAR * a * h / l).sqrt());
        let b_crit = (a.cbrt() * g.powf(1.0 / 6.0) * h.powf(-1.0 / 6.0) * big_n.sqrt()).max(floor).min(self.beta_hi);
        for b in [b_crit, floor] {
            let la = (b * h.powf(1.5) / (g.sqrt() * big_n.powf(1.5))).max(C_STAR * a * h / (b * b)).min(l / 8.0);
            out.push((b, n_for(b, la), la));
        }
        out.into_iter().filter_map(|(b, n, la)| self.project(b, n, la)).collect()
    }

    fn descend(&mut self, mut cur: Scored) -> Scored {
        let st = *self.settings;
        let m = st.grid_points;
        let (a, big_n) = (self.alpha, self.spec.n);
        for round in 0..st.rounds {
            for _ in 0..st.max_passes {
                let before = cur;
                // beta through its offset from alpha
                let (lo, hi) = window(self.beta_lo - a, self.beta_hi - a, cur.p.beta - a, round, st.shrink);
                let pts =
                    log_grid(lo, hi, m).into_iter().filter_map(|d| self.project(a + d, cur.p.n, cur.p.l_arc)).collect();
                cur = self.best_of(cur, pts);
                // layer count
                let n_lo = self.n_min(cur.p.beta) as f64;
                let (lo, hi) = window(n_lo, big_n as f64, cur.p.n as f64, round, st.shrink);
                let mut ns: Vec<usize> = log_grid(lo, hi, m).into_iter().map(|x| x.round() as usize).collect();
                ns.dedup();
                let pts = ns.into_iter().filter_map(|n| self.project(cur.p.beta, n, cur.p.l_arc)).collect();
                cur = self.best_of(cur, pts);
                // arc length
                let (lo, hi) = ConstructionParams::l_arc_range(self.spec, cur.p.beta, cur.p.n);
                let (lo, hi) = window(lo, hi, cur.p.l_arc, round, st.shrink);
                let pts =
                    log_grid(lo, hi, m).into_iter().filter_map(|la| self.project(cur.p.beta, cur.p.n, la)).collect();
                cur = self.best_of(cur, pts);
                if !key_lt(&cur, &before) {
                    break;
                }
            }
        }
        cur
    }

    /// Coordinate descent from every seed; the energy landscape in `n` has
    /// several basins, so a single start can settle in the wrong one.
    fn run(&mut self) -> Option<(Scored, f64)> {
        let seeds = self.seeds();
        if seeds.is_empty() {
            return None;
        }
        let scored = self.score(&seeds);
        let mut seed_best = scored[0];
        for s in &scored[1..] {
            if key_lt(s, &seed_best) {
                seed_best = *s;
            }
        }
        let mut best = seed_best;
        for s in scored {
            let c = self.descend(s);
            if key_lt(&c, &best) {
                best = c;
            }
        }
        Some((best, seed_best.e))
    }
}

fn optimize_single(spec: &Spec, alpha: f64, st: &OptimizerSettings) -> Result<OptimizedConstruction> {
    let plate = build_plate(spec, alpha)?;
    let plate_energy = elastic_energy(&plate, &st.search);
    let mut best: Option<(Scored, f64, usize)> = None;
    if alpha <= FRAC_PI_4 {
        let beta_hi = beta_eq_default(alpha)?;
        let floor = alpha + st.beta_floor * (beta_hi - alpha);
        if let Some(bw) = beta_for_width(alpha, spec.h, spec.l / 4.0) {
            let beta_lo = bw.max(floor);
            if beta_lo <= beta_hi {
                let mut pb = Problem { spec, alpha, settings: st, beta_lo, beta_hi, cache: HashMap::new() };
                if let Some((s, seed)) = pb.run() {
                    best = Some((s, seed, pb.cache.len()));
                }
            }
        }
    }
    let (seed_energy, evaluations) = best.map_or((f64::INFINITY, 0), |b| (b.1, b.2));
    match best {
        Some((s, _, _)) if s.e < plate_energy => {
            let params = ConstructionParams::new(spec, s.p.beta, s.p.n, s.p.l_arc)?;
            let field = build_multilayer(spec, alpha, &params)?;
            let breakdown = total_energy(&field, &st.report, st.report_jump_samples);
            Ok(OptimizedConstruction {
                spec: *spec,
                alpha,
                kind: ConstructionKind::Multilayer,
                params: Some(params),
                fold_spec: *spec,
                fold_alpha: alpha,
                breakdown,
                search_energy: s.e,
                seed_energy,
                plate_energy,
                evaluations,
            })
        }
        _ => Ok(OptimizedConstruction {
            spec: *spec,
            alpha,
            kind: ConstructionKind::Plate,
            params: None,
            fold_spec: *spec,
            fold_alpha: alpha,
            breakdown: EnergyBreakdown::purely_elastic(elastic_energy(&plate, &st.report)),
            search_energy: plate_energy,
            seed_energy,
            plate_energy,
            evaluations,
        }),
    }
}

/// Lowest measured energy among the plate bend and admissible multilayer folds.
///
/// Angles above `pi/4` fold twice: two `alpha/2` folds, each on a sample of
/// half-length `L/4`, when that sample is still valid.
pub fn optimize_construction_with(spec: &Spec, alpha: f64, st: &OptimizerSettings) -> Result<OptimizedConstruction> {
    spec.validate()?;
    if !(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (0, pi/2]")));
    }
    if alpha <= FRAC_PI_4 {
        return optimize_single(spec, alpha, st);
    }
    let direct = optimize_single(spec, alpha, st)?;
    let half = Spec { l: spec.l / 4.0, ..*spec };
    if half.validate().is_err() {
        return Ok(direct);
    }
    let sub = optimize_single(&half, alpha / 2.0, st)?;
    if sub.kind == ConstructionKind::Plate || 2.0 * sub.search_energy >= direct.search_energy {
        return Ok(direct);
    }
    let mut lengths = sub.breakdown.jump_lengths.clone();
    lengths.extend(sub.breakdown.jump_lengths.iter().copied());
    Ok(OptimizedConstruction {
        spec: *spec,
        alpha,
        kind: ConstructionKind::TwoFold,
        params: sub.params.clone(),
        fold_spec: half,
        fold_alpha: alpha / 2.0,
        breakdown: EnergyBreakdown::new(2.0 * sub.breakdown.elastic, spec.gamma, lengths),
        search_energy: 2.0 * sub.search_energy,
        seed_energy: 2.0 * sub.seed_energy,
        plate_energy: direct.plate_energy,
        evaluations: direct.evaluations + sub.evaluations,
    })
}

pub fn optimize_construction(spec: &Spec, alpha: f64) -> Result<OptimizedConstruction> {
    optimize_construction_with(spec, alpha, &OptimizerSettings::default())
}

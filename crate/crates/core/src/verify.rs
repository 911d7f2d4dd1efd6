//! Numerical certificates for constructed fields: boundary condition, central
//! arc radius, non-interpenetration of adjacent layers.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionParams, DeformationField, FieldKind, LayerCurve};
use crate::linalg::rotation;
use crate::Scalar;

/// Maximum admissible boundary residual (Frobenius).
pub const BOUNDARY_TOL: f64 = 1e-12;
/// One-sided tolerance on the separation ratio.
pub const SEPARATION_TOL: f64 = 1e-9;
/// Default sample count per curve piece in the separation check.
pub const SEPARATION_SAMPLES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Point { x1: f64, x2: f64 },
    Pair { layer: usize, s: f64, t: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: FieldKind,
    pub certified: bool,
    pub checks: Vec<CheckResult>,
}

impl CertificateReport {
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Minimal `|f_j(s) - f_{j+1}(t)| / h_j` over adjacent pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub ratio: f64,
    pub layer: usize,
    pub s: f64,
    pub t: f64,
}

/// Separation over whole midlines (`global`) and over the fold core, where each
/// curve is restricted to its central arc and down-slope (`core`). `None` for a
/// single layer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub global: Option<SeparationWitness>,
    pub core: Option<SeparationWitness>,
}

impl SeparationReport {
    pub fn min_ratio(&self) -> f64 {
        self.global.map_or(f64::INFINITY, |w| w.ratio)
    }

    pub fn core_ratio(&self) -> f64 {
        self.core.map_or(f64::INFINITY, |w| w.ratio)
    }
}

/// Largest `|Du - R(-+alpha)|` over 200 abscissae per side in `L/2 <= |x1| <= L`
/// and four heights per strip.
pub fn check_boundary<T: Scalar>(field: &DeformationField<T>) -> (T, Witness) {
    let spec = field.spec();
    let half = spec.l / T::of(2.0);
    let (rm, rp) = (rotation(-field.alpha()), rotation(field.alpha()));
    let mut worst = (T::zero(), Witness::Point { x1: 0.0, x2: 0.0 });
    let m = 200;
    for i in 0..m {
        let x1 = half + half * (T::of_usize(i) / T::of_usize(m - 1));
        for j in 0..field.layer_count() {
            let (b0, b1) = (field.boundaries()[j], field.boundaries()[j + 1]);
            for k in 0..4 {
                let x2 = b0 + (b1 - b0) * (T::of_usize(k) + T::of(0.5)) / T::of(4.0);
                for (x, r) in [(x1, rm), (-x1, rp)] {
                    let g = field.eval_grad(x, x2).expect("sample inside domain");
                    let res = (g - r).frobenius();
                    if res > worst.0 || res.is_nan() {
                        worst = (res, Witness::Point { x1: x.to_f64_lossy(), x2: x2.to_f64_lossy() });
                    }
                }
            }
        }
    }
    worst
}

/// `h_j <= l_arc / beta` for every layer, admitting equality up to rounding.
pub fn check_central_radius<T: Scalar>(params: &ConstructionParams<T>) -> bool {
    params.thicknesses().iter().all(|&hj| hj * params.beta <= params.l_arc * (T::one() + T::of(1e-12)))
}

fn linspace_pieces<T: Scalar>(edges: &[T], per_piece: usize) -> Vec<(T, T)> {
    // (abscissa, local spacing)
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let step = (w[1] - w[0]) / T::of_usize(per_piece - 1);
        for k in 0..per_piece {
            let x = if k + 1 == per_piece { w[1] } else { w[0] + step * T::of_usize(k) };
            out.push((x, step));
        }
    }
    out
}

fn piece_edges<T: Scalar>(layer: &LayerCurve<T>, lo: T, hi: T) -> Vec<T> {
    let mut e = vec![lo, hi, T::zero()];
    for b in layer.midline.breakpoints() {
        e.push(b);
        e.push(-b);
    }
    e.retain(|&x| x >= lo && x <= hi);
    e.sort_by(|a, b| a.partial_cmp(b).expect("finite edge"));
    e.dedup();
    e
}

fn dist<T: Scalar>(p: [T; 2], q: [T; 2]) -> T {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn golden<T: Scalar>(mut a: T, mut b: T, f: impl Fn(T) -> T) -> T {
    let g = T::of(0.618_033_988_749_894_9);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Minimum distance between two curves restricted to `[s_lo, s_hi]` and
/// `[t_lo, t_hi]`: sampled on every piece, pruned by abscissa, refined by
/// alternating golden sections around the best sample pair.
fn pair_min<T: Scalar>(
    lower: &LayerCurve<T>,
    upper: &LayerCurve<T>,
    (s_lo, s_hi): (T, T),
    (t_lo, t_hi): (T, T),
    per_piece: usize,
) -> (T, T, T) {
    let ss = linspace_pieces(&piece_edges(lower, s_lo, s_hi), per_piece);
    let ts = linspace_pieces(&piece_edges(upper, t_lo, t_hi), per_piece);
    let ps: Vec<[T; 2]> = ss.iter().map(|&(s, _)| lower.midline.point(s)).collect();
    let mut qs: Vec<([T; 2], usize)> = ts.iter().enumerate().map(|(k, &(t, _))| (upper.midline.point(t), k)).collect();
    qs.sort_by(|a, b| a.0[0].partial_cmp(&b.0[0]).expect("finite point"));
    let xs: Vec<T> = qs.iter().map(|q| q.0[0]).collect();

    let mut best = (T::infinity(), 0usize, 0usize);
    for (i, p) in ps.iter().enumerate() {
        let start = xs.partition_point(|&x| x < p[0]);
        let mut k = start;
        while k < qs.len() && xs[k] - p[0] < best.0 {
            let d = dist(*p, qs[k].0);
            if d < best.0 {
                best = (d, i, qs[k].1);
            }
            k += 1;
        }
        let mut k = start;
        while k > 0 && p[0] - xs[k - 1] < best.0 {
            k -= 1;
            let d = dist(*p, qs[k].0);
            if d < best.0 {
                best = (d, i, qs[k].1);
            }
        }
    }
    let (mut s, ds) = ss[best.1];
    let (mut t, dt) = ts[best.2];
    let clamp = |x: T, lo: T, hi: T| x.max(lo).min(hi);
    let (sa, sb) = (clamp(s - ds, s_lo, s_hi), clamp(s + ds, s_lo, s_hi));
    let (ta, tb) = (clamp(t - dt, t_lo, t_hi), clamp(t + dt, t_lo, t_hi));
    let mut d = best.0;
    for _ in 0..6 {
        let q = upper.midline.point(t);
        let s2 = golden(sa, sb, |x| dist(lower.midline.point(x), q));
        let p = lower.midline.point(s2);
        let t2 = golden(ta, tb, |x| dist(p, upper.midline.point(x)));
        let d2 = dist(p, upper.midline.point(t2));
        if d2 < d {
            d = d2;
            s = s2;
            t = t2;
        } else {
            break;
        }
    }
    (d, s, t)
}

/// Non-interpenetration margin `min |f_j(s) - f_{j+1}(t)| / h_j`.
pub fn check_layer_separation<T: Scalar>(field: &DeformationField<T>, samples: usize) -> SeparationReport {
    if field.kind() != FieldKind::Multilayer || field.layer_count() < 2 {
        return SeparationReport { global: None, core: None };
    }
    let samples = samples.max(2);
    let l = field.spec().l;
    let la = field.params().expect("multilayer params").l_arc;
    let layers = field.layers();
    let per_pair: Vec<(SeparationWitness, SeparationWitness)> = (0..layers.len() - 1)
        .into_par_iter()
        .map(|j| {
            let (lo, up) = (&layers[j], &layers[j + 1]);
            let hj = lo.thickness;
            let (d, s, t) = pair_min(lo, up, (-l, l), (-l, l), samples);
            let g = SeparationWitness {
                ratio: (d / hj).to_f64_lossy(),
                layer: j,
                s: s.to_f64_lossy(),
                t: t.to_f64_lossy(),
            };
            let rs = lo.down_slope + la;
            let rt = up.down_slope + la;
            let (d, s, t) = pair_min(lo, up, (-rs, rs), (-rt, rt), samples);
            let c = SeparationWitness {
                ratio: (d / hj).to_f64_lossy(),
                layer: j,
                s: s.to_f64_lossy(),
                t: t.to_f64_lossy(),
            };
            (g, c)
        })
        .collect();
    let pick = |it: &mut dyn Iterator<Item = SeparationWitness>| {
        it.fold(None, |acc: Option<SeparationWitness>, w| match acc {
            Some(a) if a.ratio <= w.ratio => Some(a),
            _ => Some(w),
        })
    };
    SeparationReport { global: pick(&mut per_pair.iter().map(|p| p.0)), core: pick(&mut per_pair.iter().map(|p| p.1)) }
}

fn cpa_continuity<T: Scalar>(field: &DeformationField<T>) -> (T, Witness) {
    let kin = field.kinematics().expect("cpa kinematics");
    let spec = field.spec();
    let (sb, cb) = kin.beta.sin_cos();
    let mut worst = (T::zero(), Witness::Point { x1: 0.0, x2: 0.0 });
    for i in 0..100 {
        let x2 = spec.h * (T::of_usize(i) + T::of(0.5)) / T::of(100.0);
        for sign in [-T::one(), T::one()] {
            let x1 = sign * kin.zeta * (spec.h - x2);
            let inner = [x1 * cb, x1.abs() * sb + kin.d * x2];
            let outer = field.eval(x1, x2).expect("branch line inside domain");
            let r = dist(inner, outer);
            if r > worst.0 {
                worst = (r, Witness::Point { x1: x1.to_f64_lossy(), x2: x2.to_f64_lossy() });
            }
        }
    }
    worst
}

/// Runs every check that applies to the field kind.
pub fn certify<T: Scalar>(field: &DeformationField<T>) -> CertificateReport {
    let mut checks = Vec::new();
    let (res, w) = check_boundary(field);
    let res = res.to_f64_lossy();
    checks.push(CheckResult {
        name: "boundary".into(),
        passed: res < BOUNDARY_TOL,
        value: res,
        threshold: BOUNDARY_TOL,
        witness: Some(w),
        note: None,
    });
    if let Some(kin) = field.kinematics() {
        let dc = (kin.d * kin.beta.cos()).to_f64_lossy();
        checks.push(CheckResult {
            name: "admissibility".into(),
            passed: kin.admissible,
            value: dc,
            threshold: 1.0,
            witness: None,
            note: Some("d cos(beta) >= 1".into()),
        });
    }
    match field.kind() {
        FieldKind::Plate => {}
        FieldKind::Cpa => {
            let (r, w) = cpa_continuity(field);
            let r = r.to_f64_lossy();
            checks.push(CheckResult {
                name: "continuity".into(),
                passed: r < BOUNDARY_TOL,
                value: r,
                threshold: BOUNDARY_TOL,
                witness: Some(w),
                note: None,
            });
        }
        FieldKind::Multilayer => {
            let params = field.params().expect("multilayer params");
            let constraints = params.check(field.spec(), field.alpha());
            checks.push(CheckResult {
                name: "constraints".into(),
                passed: constraints.is_ok(),
                value: if constraints.is_ok() { 0.0 } else { 1.0 },
                threshold: 0.0,
                witness: None,
                note: constraints.err().map(|e| e.to_string()),
            });
            let worst = params
                .thicknesses()
                .iter()
                .map(|&hj| (hj * params.beta / params.l_arc).to_f64_lossy())
                .fold(0.0, f64::max);
            checks.push(CheckResult {
                name: "central_radius".into(),
                passed: check_central_radius(params),
                value: worst,
                threshold: 1.0,
                witness: None,
                note: Some("max h_j beta / l_arc".into()),
            });
            let sep = check_layer_separation(field, SEPARATION_SAMPLES);
            let ratio = sep.min_ratio();
            checks.push(CheckResult {
                name: "layer_separation".into(),
                passed: ratio >= 1.0 - SEPARATION_TOL,
                value: ratio,
                threshold: 1.0 - SEPARATION_TOL,
                witness: sep.global.map(|w| Witness::Pair { layer: w.layer, s: w.s, t: w.t }),
                note: (field.layer_count() < 2).then(|| "single layer: no adjacent pairs".to_string()),
            });
        }
    }
    let certified = checks.iter().all(|c| c.passed);
    CertificateReport { kind: field.kind(), certified, checks }
}

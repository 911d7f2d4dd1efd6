use serde::{Deserialize, Serialize};

use super::curve::{LayerCurve, Midline};
use super::params::ConstructionParams;
use crate::angles::{beta_eq_default, kinematics, FoldKinematics};
use crate::error::{constraint, domain, Error, Result};
use crate::linalg::{rotation, Mat2};
use crate::{MaterialSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Plate,
    Cpa,
    Multilayer,
}

/// Closed-form deformation of the sample `[-L, L] x [0, h]`.
///
/// Plate and multilayer fields are stacks of lifted midlines
/// `u = f_j(x1) + (x2 - b_j) f_j'(x1)^perp` on `[b_j, b_{j+1})`; the
/// piecewise-affine fold is evaluated from its two branches directly.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationField<T> {
    kind: FieldKind,
    spec: MaterialSpec<T>,
    alpha: T,
    kin: Option<FoldKinematics<T>>,
    params: Option<ConstructionParams<T>>,
    boundaries: Vec<T>,
    layers: Vec<LayerCurve<T>>,
    checked: bool,
}

/// Serialized form; curves are rebuilt on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldDoc<T> {
    pub kind: FieldKind,
    pub spec: MaterialSpec<T>,
    pub alpha: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<T>,
    pub params: Option<ConstructionParams<T>>,
    pub boundaries: Vec<T>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub checked: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha <= T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(domain(format!("bend angle {alpha} outside (0, pi/2]")))
    }
}

/// Uniform bend: circular arc of curvature `2 alpha / L` on `|x1| < L/2`,
/// straight and rotated by `-+alpha` outside.
pub fn build_plate<T: Scalar>(spec: &MaterialSpec<T>, alpha: T) -> Result<DeformationField<T>> {
    spec.validate()?;
    check_alpha(alpha)?;
    let half = spec.l / T::of(2.0);
    let radius = spec.l / (T::of(2.0) * alpha);
    let midline = Midline::new(
        [T::zero(), radius],
        &[(T::zero(), T::zero(), -T::of(2.0) * alpha / spec.l), (half, -alpha, T::zero())],
    );
    let layer = LayerCurve { bottom: T::zero(), thickness: spec.h, down_slope: T::zero(), midline };
    Ok(DeformationField {
        kind: FieldKind::Plate,
        spec: *spec,
        alpha,
        kin: None,
        params: None,
        boundaries: vec![T::zero(), spec.h],
        layers: vec![layer],
        checked: true,
    })
}

/// Continuous piecewise-affine fold with down-slope angle `beta`.
pub fn build_cpa<T: Scalar>(spec: &MaterialSpec<T>, alpha: T, beta: T) -> Result<DeformationField<T>> {
    spec.validate()?;
    check_alpha(alpha)?;
    let kin = kinematics(alpha, beta)?;
    let beq = beta_eq_default(alpha)?;
    if beta > beq * T::of(1.0 + 1e-12) {
        return Err(Error::Admissibility { beta: beta.to_f64_lossy(), beta_eq: beq.to_f64_lossy() });
    }
    if kin.zeta > spec.l / (T::of(2.0) * spec.h) {
        return Err(constraint(format!("zeta = {} exceeds L/(2h) = {}", kin.zeta, spec.l / (T::of(2.0) * spec.h))));
    }
    Ok(DeformationField {
        kind: FieldKind::Cpa,
        spec: *spec,
        alpha,
        kin: Some(kin),
        params: None,
        boundaries: vec![T::zero(), spec.h],
        layers: Vec::new(),
        checked: true,
    })
}

/// Rounded multilayer fold; `params` must satisfy every construction constraint.
pub fn build_multilayer<T: Scalar>(
    spec: &MaterialSpec<T>,
    alpha: T,
    params: &ConstructionParams<T>,
) -> Result<DeformationField<T>> {
    spec.validate()?;
    check_alpha(alpha)?;
    let kin = params.check(spec, alpha)?;
    Ok(assemble(spec, alpha, params, kin, true))
}

/// Same geometry as [`build_multilayer`] with only the shape of `params`
/// checked. Used to build negative controls for the certificate.
pub fn build_multilayer_unchecked<T: Scalar>(
    spec: &MaterialSpec<T>,
    alpha: T,
    params: &ConstructionParams<T>,
) -> Result<DeformationField<T>> {
    spec.validate()?;
    check_alpha(alpha)?;
    params.check_shape(spec)?;
    let kin = kinematics(alpha, params.beta)?;
    Ok(assemble(spec, alpha, params, kin, false))
}

fn assemble<T: Scalar>(
    spec: &MaterialSpec<T>,
    alpha: T,
    params: &ConstructionParams<T>,
    kin: FoldKinematics<T>,
    checked: bool,
) -> DeformationField<T> {
    let (beta, la) = (params.beta, params.l_arc);
    let layers = params
        .boundaries
        .windows(2)
        .map(|w| {
            let down = kin.zeta * (spec.h - w[0]);
            let midline = Midline::new(
                [T::zero(), kin.d * w[0]],
                &[
                    (T::zero(), T::zero(), beta / la),
                    (la, beta, T::zero()),
                    (down + la, beta, -(alpha + beta) / la),
                    (down + la + la, -alpha, T::zero()),
                ],
            );
            LayerCurve { bottom: w[0], thickness: w[1] - w[0], down_slope: down, midline }
        })
        .collect();
    DeformationField {
        kind: FieldKind::Multilayer,
        spec: *spec,
        alpha,
        kin: Some(kin),
        params: Some(params.clone()),
        boundaries: params.boundaries.clone(),
        layers,
        checked,
    }
}

impl<T: Scalar> DeformationField<T> {
    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn spec(&self) -> &MaterialSpec<T> {
        &self.spec
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn kinematics(&self) -> Option<&FoldKinematics<T>> {
        self.kin.as_ref()
    }

    pub fn params(&self) -> Option<&ConstructionParams<T>> {
        self.params.as_ref()
    }

    /// `0 = b_0 < ... < b_n = h`; `[0, h]` for unlayered fields.
    pub fn boundaries(&self) -> &[T] {
        &self.boundaries
    }

    /// Layer midlines (one for the plate, none for the piecewise-affine fold).
    pub fn layers(&self) -> &[LayerCurve<T>] {
        &self.layers
    }

    pub fn layer_count(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// Whether all construction constraints were verified at build time.
    pub fn is_checked(&self) -> bool {
        self.checked
    }

    /// Strip owning ordinate `x2`: `[b_j, b_{j+1})`, the top strip also owns `h`.
    pub fn layer_index(&self, x2: T) -> usize {
        let n = self.layer_count();
        let mut j = 0;
        while j + 1 < n && x2 >= self.boundaries[j + 1] {
            j += 1;
        }
        j
    }

    fn check_point(&self, x1: T, x2: T) -> Result<()> {
        let inside = x1 >= -self.spec.l && x1 <= self.spec.l && x2 >= T::zero() && x2 <= self.spec.h;
        if inside {
            Ok(())
        } else {
            Err(domain(format!("point ({x1}, {x2}) outside [-L, L] x [0, h]")))
        }
    }

    pub fn eval(&self, x1: T, x2: T) -> Result<[T; 2]> {
        self.check_point(x1, x2)?;
        Ok(match self.kind {
            FieldKind::Cpa => self.cpa_point(x1, x2),
            _ => {
                let j = self.layer_index(x2);
                let layer = &self.layers[j];
                layer.lift(x1, x2 - layer.bottom)
            }
        })
    }

    pub fn eval_grad(&self, x1: T, x2: T) -> Result<Mat2<T>> {
        self.check_point(x1, x2)?;
        Ok(match self.kind {
            FieldKind::Cpa => self.cpa_grad(x1, x2),
            _ => self.layer_grad(self.layer_index(x2), x1, x2),
        })
    }

    /// `Du = [f'(1 - s phi') | f'^perp]` inside strip `j`, `s = x2 - b_j`.
    pub(crate) fn layer_grad(&self, j: usize, x1: T, x2: T) -> Mat2<T> {
        let layer = &self.layers[j];
        let t = layer.midline.tangent(x1);
        let stretch = T::one() - (x2 - layer.bottom) * layer.midline.curvature(x1);
        Mat2::from_columns([t[0] * stretch, t[1] * stretch], [-t[1], t[0]])
    }

    fn cpa_inner(&self, x1: T, x2: T) -> bool {
        let kin = self.kin.as_ref().expect("cpa kinematics");
        x1.abs() < kin.zeta * (self.spec.h - x2)
    }

    fn cpa_point(&self, x1: T, x2: T) -> [T; 2] {
        let kin = self.kin.as_ref().expect("cpa kinematics");
        let h = self.spec.h;
        let (sa, ca) = self.alpha.sin_cos();
        if self.cpa_inner(x1, x2) {
            let (sb, cb) = kin.beta.sin_cos();
            [x1 * cb, x1.abs() * sb + kin.d * x2]
        } else {
            let sg = if x1 < T::zero() { -T::one() } else { T::one() };
            [x1 * ca + (x2 - h) * sa * sg, -x1.abs() * sa + (x2 - h) * ca + kin.d * h]
        }
    }

    fn cpa_grad(&self, x1: T, x2: T) -> Mat2<T> {
        let kin = self.kin.as_ref().expect("cpa kinematics");
        let neg = x1 < T::zero();
        if self.cpa_inner(x1, x2) {
            let (sb, cb) = kin.beta.sin_cos();
            Mat2::new(cb, T::zero(), if neg { -sb } else { sb }, kin.d)
        } else if neg {
            rotation(self.alpha)
        } else {
            rotation(-self.alpha)
        }
    }

    /// Number of interior interfaces `b_1 .. b_{n-1}`.
    pub fn interface_count(&self) -> usize {
        self.layer_count() - 1
    }

    /// Trace of strip `i - 1` from below and strip `i` from above at `(x1, b_i)`.
    pub fn interface_traces(&self, i: usize, x1: T) -> ([T; 2], [T; 2]) {
        let below = &self.layers[i - 1];
        let above = &self.layers[i];
        (below.lift(x1, below.thickness), above.lift(x1, T::zero()))
    }

    /// `|u(x1, b_i^+) - u(x1, b_i^-)|` for interface `i` in `1..n`.
    pub fn interface_gap(&self, i: usize, x1: T) -> T {
        let (lo, hi) = self.interface_traces(i, x1);
        (hi[0] - lo[0]).hypot(hi[1] - lo[1])
    }

    /// Sorted `x1` cut points in `(-L, L)` where the integrand of row `x2` may be
    /// non-smooth; strip `j` owns the row.
    pub fn x_cuts(&self, j: usize, x2: T) -> Vec<T> {
        let half = self.spec.l / T::of(2.0);
        let mut cuts = vec![-half, half];
        match self.kind {
            FieldKind::Cpa => {
                let kin = self.kin.as_ref().expect("cpa kinematics");
                let w = kin.zeta * (self.spec.h - x2);
                cuts.push(-w);
                cuts.push(w);
            }
            _ => {
                for b in self.layers[j].midline.breakpoints() {
                    cuts.push(b);
                    cuts.push(-b);
                }
            }
        }
        cuts.retain(|&c| c > -self.spec.l && c < self.spec.l);
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cut"));
        cuts.dedup();
        cuts
    }

    pub fn to_doc(&self) -> FieldDoc<T> {
        FieldDoc {
            kind: self.kind,
            spec: self.spec,
            alpha: self.alpha,
            beta: match self.kind {
                FieldKind::Cpa => self.kin.map(|k| k.beta),
                _ => None,
            },
            params: self.params.clone(),
            boundaries: self.boundaries.clone(),
            checked: self.checked,
        }
    }

    pub fn from_doc(doc: &FieldDoc<T>) -> Result<Self> {
        match doc.kind {
            FieldKind::Plate => build_plate(&doc.spec, doc.alpha),
            FieldKind::Cpa => {
                let beta = doc.beta.ok_or_else(|| domain("piecewise-affine field needs beta"))?;
                build_cpa(&doc.spec, doc.alpha, beta)
            }
            FieldKind::Multilayer => {
                let params = doc.params.as_ref().ok_or_else(|| domain("multilayer field needs params"))?;
                if params.boundaries != doc.boundaries {
                    return Err(domain("boundaries disagree with params"));
                }
                if doc.checked {
                    build_multilayer(&doc.spec, doc.alpha, params)
                } else {
                    build_multilayer_unchecked(&doc.spec, doc.alpha, params)
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("field doc serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: FieldDoc<T> = serde_json::from_str(s).map_err(|e| domain(format!("field JSON: {e}")))?;
        Self::from_doc(&doc)
    }
}

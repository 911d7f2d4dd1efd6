//! Energies of deformation fields: midpoint quadrature of `dist^2(Du, SO(2))`
//! per layer strip, and jump-length measurement along the interfaces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionParams, DeformationField, FieldKind};
use crate::error::{domain, Result};
use crate::linalg::dist_so2_squared;
use crate::scalar::KahanSum;
use crate::{EnergyBreakdown, MaterialSpec, Scalar};

/// Gap size above which an interface counts as open (length units).
pub const JUMP_THRESHOLD: f64 = 1e-10;

/// Bisection stops once a transition is located to this fraction of `L`.
pub const JUMP_RESOLUTION: f64 = 1e-8;

/// Tensor midpoint rule; `nx` cells along the full width `2L`, spread over the
/// smooth pieces of each row, and `ny_per_layer` rows in every strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub nx: usize,
    pub ny_per_layer: usize,
}

impl QuadratureSettings {
    pub fn new(nx: usize, ny_per_layer: usize) -> Result<Self> {
        if nx < 16 || ny_per_layer < 4 {
            return Err(domain(format!("quadrature needs nx >= 16 and ny >= 4, got {nx} x {ny_per_layer}")));
        }
        Ok(Self { nx, ny_per_layer })
    }

    pub fn halved_steps(self) -> Self {
        Self { nx: 2 * self.nx, ny_per_layer: 2 * self.ny_per_layer }
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { nx: 512, ny_per_layer: 16 }
    }
}

fn strip_energy<T: Scalar>(field: &DeformationField<T>, j: usize, q: &QuadratureSettings) -> T {
    let spec = field.spec();
    let (b0, b1) = (field.boundaries()[j], field.boundaries()[j + 1]);
    let dy = (b1 - b0) / T::of_usize(q.ny_per_layer);
    let width = T::of(2.0) * spec.l;
    let mut acc = KahanSum::new();
    for r in 0..q.ny_per_layer {
        let x2 = b0 + (T::of_usize(r) + T::of(0.5)) * dy;
        let cuts = field.x_cuts(j, x2);
        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(-spec.l);
        edges.extend(cuts);
        edges.push(spec.l);
        let mut row = KahanSum::new();
        for w in edges.windows(2) {
            let len = w[1] - w[0];
            let cells = (T::of_usize(q.nx) * len / width).round().to_usize().unwrap_or(1).max(1);
            let dx = len / T::of_usize(cells);
            for c in 0..cells {
                let x1 = w[0] + (T::of_usize(c) + T::of(0.5)) * dx;
                let g = match field.kind() {
                    FieldKind::Cpa => field.eval_grad(x1, x2).expect("midpoint inside domain"),
                    _ => field.layer_grad(j, x1, x2),
                };
                row.add(dist_so2_squared(&g) * dx);
            }
        }
        acc.add(row.value() * dy);
    }
    acc.value()
}

/// `int dist^2(Du, SO(2))` over the sample, never straddling an interface.
pub fn elastic_energy<T: Scalar>(field: &DeformationField<T>, q: &QuadratureSettings) -> T {
    let parts: Vec<T> = (0..field.layer_count()).into_par_iter().map(|j| strip_energy(field, j, q)).collect();
    let mut acc = KahanSum::new();
    for p in parts {
        acc.add(p);
    }
    acc.value()
}

fn locate<T: Scalar>(field: &DeformationField<T>, i: usize, mut a: T, mut b: T, threshold: T, tol: T) -> T {
    let open_a = field.interface_gap(i, a) > threshold;
    while b - a > tol {
        let m = a + (b - a) * T::of(0.5);
        if m <= a || m >= b {
            break;
        }
        if (field.interface_gap(i, m) > threshold) == open_a {
            a = m;
        } else {
            b = m;
        }
    }
    a + (b - a) * T::of(0.5)
}

/// Length of `{x1 : gap > threshold}` on interface `i`.
///
/// Samples a uniform grid plus the kinks of both adjacent midlines, then
/// bisects every open/closed transition.
pub fn interface_jump_length<T: Scalar>(field: &DeformationField<T>, i: usize, samples: usize, threshold: T) -> T {
    let l = field.spec().l;
    let samples = samples.max(2);
    let mut xs: Vec<T> =
        (0..samples).map(|k| -l + T::of(2.0) * l * T::of_usize(k) / T::of_usize(samples - 1)).collect();
    xs.push(T::zero());
    for layer in &field.layers()[i - 1..=i] {
        for b in layer.midline.breakpoints() {
            if b < l {
                xs.push(b);
                xs.push(-b);
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite sample"));
    xs.dedup();
    let tol = T::of(JUMP_RESOLUTION) * l;
    let open: Vec<bool> = xs.iter().map(|&x| field.interface_gap(i, x) > threshold).collect();
    let mut total = KahanSum::new();
    let mut start = if open[0] { Some(xs[0]) } else { None };
    for k in 1..xs.len() {
        if open[k] != open[k - 1] {
            let t = locate(field, i, xs[k - 1], xs[k], threshold, tol);
            match start.take() {
                Some(s) => total.add(t - s),
                None => start = Some(t),
            }
        }
    }
    if let Some(s) = start {
        total.add(xs[xs.len() - 1] - s);
    }
    total.value()
}

/// Jump lengths of every interface at an explicit threshold.
pub fn jump_lengths<T: Scalar>(field: &DeformationField<T>, samples_per_interface: usize, threshold: T) -> Vec<T> {
    if field.kind() != FieldKind::Multilayer {
        return Vec::new();
    }
    (1..field.layer_count())
        .into_par_iter()
        .map(|i| interface_jump_length(field, i, samples_per_interface, threshold))
        .collect()
}

/// `(gamma * total jump length, per-interface lengths)`.
pub fn delamination_energy<T: Scalar>(field: &DeformationField<T>, samples_per_interface: usize) -> (T, Vec<T>) {
    let lengths = jump_lengths(field, samples_per_interface, T::of(JUMP_THRESHOLD));
    let mut acc = KahanSum::new();
    for &l in &lengths {
        acc.add(l);
    }
    (field.spec().gamma * acc.value(), lengths)
}

pub fn total_energy<T: Scalar>(
    field: &DeformationField<T>,
    q: &QuadratureSettings,
    samples_per_interface: usize,
) -> EnergyBreakdown<T> {
    let elastic = elastic_energy(field, q);
    let lengths = jump_lengths(field, samples_per_interface, T::of(JUMP_THRESHOLD));
    EnergyBreakdown::new(elastic, field.spec().gamma, lengths)
}

/// Closed-form energy estimate of the multilayer fold (unit constant):
/// `gamma n (zeta h + l_arc) + beta^2 h^3 / (l_arc n^2)`.
pub fn construction_bound<T: Scalar>(spec: &MaterialSpec<T>, alpha: T, params: &ConstructionParams<T>) -> Result<T> {
    let kin = params.check(spec, alpha)?;
    let n = T::of_usize(params.n);
    let h = spec.h;
    Ok(spec.gamma * n * (kin.zeta * h + params.l_arc) + params.beta * params.beta * h * h * h / (params.l_arc * n * n))
}

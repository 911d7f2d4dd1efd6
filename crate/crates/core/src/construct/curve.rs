use serde::{Deserialize, Serialize};

use crate::scalar::sinc;
use crate::Scalar;

/// One piece of an odd, piecewise-linear orientation `phi(s) = phi0 + k (s - start)`
/// on `s >= start`, with the point reached at `start` (relative to the base).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece<T> {
    pub start: T,
    pub phi0: T,
    pub k: T,
    pub offset: [T; 2],
}

/// `int_0^len (cos, sin)(phi0 + k t) dt` in closed form.
#[inline]
fn chord<T: Scalar>(phi0: T, k: T, len: T) -> [T; 2] {
    let half = k * len * T::of(0.5);
    let (s, c) = (phi0 + half).sin_cos();
    let m = len * sinc(half);
    [m * c, m * s]
}

/// Arc-length parametrized planar curve with odd orientation, `f(0) = base`,
/// `f(-x) = (2 base_1 - f_1(x), f_2(x))` (base_1 = 0 in all our fields).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Midline<T> {
    pub base: [T; 2],
    pieces: Vec<Piece<T>>,
}

impl<T: Scalar> Midline<T> {
    /// `spec` lists `(start, phi0, k)` for `s >= 0`, first start 0; offsets are integrated here.
    pub fn new(base: [T; 2], spec: &[(T, T, T)]) -> Self {
        let mut pieces: Vec<Piece<T>> = Vec::with_capacity(spec.len());
        let mut at = [T::zero(), T::zero()];
        for (i, &(start, phi0, k)) in spec.iter().enumerate() {
            if i > 0 {
                let p = pieces[i - 1];
                let c = chord(p.phi0, p.k, start - p.start);
                at = [p.offset[0] + c[0], p.offset[1] + c[1]];
            }
            pieces.push(Piece { start, phi0, k, offset: at });
        }
        Self { base, pieces }
    }

    #[inline]
    fn piece(&self, s: T) -> &Piece<T> {
        let mut idx = 0;
        for (i, p) in self.pieces.iter().enumerate() {
            if s >= p.start {
                idx = i;
            }
        }
        &self.pieces[idx]
    }

    /// Positive breakpoints (starts of all pieces but the first).
    pub fn breakpoints(&self) -> Vec<T> {
        self.pieces.iter().skip(1).map(|p| p.start).collect()
    }

    pub fn orientation(&self, x: T) -> T {
        let s = x.abs();
        let p = self.piece(s);
        let phi = p.phi0 + p.k * (s - p.start);
        if x < T::zero() {
            -phi
        } else {
            phi
        }
    }

    /// `phi'(x)`; even in `x`, taken from the piece owning `|x|`.
    pub fn curvature(&self, x: T) -> T {
        self.piece(x.abs()).k
    }

    pub fn tangent(&self, x: T) -> [T; 2] {
        let (s, c) = self.orientation(x).sin_cos();
        [c, s]
    }

    pub fn point(&self, x: T) -> [T; 2] {
        let s = x.abs();
        let p = self.piece(s);
        let c = chord(p.phi0, p.k, s - p.start);
        let dx = p.offset[0] + c[0];
        let dy = p.offset[1] + c[1];
        if x < T::zero() {
            [self.base[0] - dx, self.base[1] + dy]
        } else {
            [self.base[0] + dx, self.base[1] + dy]
        }
    }
}

/// Midline of one ply stack `[bottom, bottom + thickness)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerCurve<T> {
    pub bottom: T,
    pub thickness: T,
    /// Down-slope half-width `l_j` (zero for the plate midline).
    pub down_slope: T,
    pub midline: Midline<T>,
}

impl<T: Scalar> LayerCurve<T> {
    /// Point at height `s` above the midline: `f(x) + s f'(x)^perp`.
    pub fn lift(&self, x: T, s: T) -> [T; 2] {
        let f = self.midline.point(x);
        let t = self.midline.tangent(x);
        [f[0] - s * t[1], f[1] + s * t[0]]
    }

    pub fn top(&self) -> T {
        self.bottom + self.thickness
    }
}

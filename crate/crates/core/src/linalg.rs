//! 2x2 matrices, rotations and the distance to SO(2).

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Row-major 2x2 matrix `[[a11, a12], [a21, a22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    pub fn diag(d1: T, d2: T) -> Self {
        Self::new(d1, T::zero(), T::zero(), d2)
    }

    pub fn from_columns(c1: [T; 2], c2: [T; 2]) -> Self {
        Self::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn det(&self) -> T {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> T {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn frobenius_sq(&self) -> T {
        self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22
    }

    pub fn frobenius(&self) -> T {
        self.frobenius_sq().sqrt()
    }

    pub fn apply(&self, v: [T; 2]) -> [T; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    /// Singular values `(s1, s2)`, `s1 >= s2 >= 0`, from the invariants `|F|^2` and `det F`.
    ///
    /// `p = sqrt(|F|^2 + 2 det F)` and `q = sqrt(|F|^2 - 2 det F)` are the sum and
    /// difference of the singular values (in some order), and both are computed as
    /// hypotenuses of matrix entries so no cancellation occurs under the root.
    pub fn singular_values(&self) -> (T, T) {
        let (p, q) = self.pq();
        let two = T::of(2.0);
        ((p + q) / two, (p - q).abs() / two)
    }

    fn pq(&self) -> (T, T) {
        let p = (self.a11 + self.a22).hypot(self.a21 - self.a12);
        let q = (self.a11 - self.a22).hypot(self.a12 + self.a21);
        (p, q)
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

/// Counter-clockwise rotation by `phi`.
pub fn rotation<T: Scalar>(phi: T) -> Mat2<T> {
    let (s, c) = phi.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Squared Frobenius distance from `f` to SO(2).
///
/// With singular values `s1 >= s2` this is `(s1-1)^2 + (s2-1)^2` for `det f >= 0`
/// and `(s1-1)^2 + (s2+1)^2` otherwise. Both branches collapse to
/// `((p-2)^2 + q^2) / 2` in the notation of [`Mat2::singular_values`], which is
/// what gets evaluated.
pub fn dist_so2_squared<T: Scalar>(f: &Mat2<T>) -> T {
    let (p, q) = f.pq();
    let two = T::of(2.0);
    let e = p - two;
    (e * e + q * q) / two
}

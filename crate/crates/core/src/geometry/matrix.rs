use core::f64::consts::PI;
use core::ops::{Mul, Neg};

use crate::word::Word;
use crate::C64;

/// Element of `SL(2, C)` acting on the Riemann sphere by `z ↦ (az+b)/(cz+d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix2C {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

impl Matrix2C {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn diag(a: C64) -> Self {
        Self::new(a, ZERO, ZERO, a.inv())
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    /// Inverse, assuming unit determinant up to scaling.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Rescaled to determinant 1.
    pub fn normalized(&self) -> Self {
        self.scale(self.det().sqrt().inv())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// `M X M⁻¹`
    pub fn conjugate_by(&self, m: &Matrix2C) -> Self {
        *m * *self * m.inverse()
    }

    /// Sum of squared moduli of the entries; `cosh d(j, Mj) = ‖M‖² / 2`.
    pub fn frobenius_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn max_abs_diff(&self, o: &Matrix2C) -> f64 {
        [
            (self.a - o.a),
            (self.b - o.b),
            (self.c - o.c),
            (self.d - o.d),
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    /// Equal up to sign within `tol`.
    pub fn approx_eq_pm(&self, o: &Matrix2C, tol: f64) -> bool {
        self.max_abs_diff(o) <= tol || self.max_abs_diff(&-*o) <= tol
    }

    /// Möbius action on a finite point; `None` for the image `∞`.
    pub fn apply(&self, z: C64) -> Option<C64> {
        let den = self.c * z + self.d;
        if den == ZERO {
            None
        } else {
            Some((self.a * z + self.b) / den)
        }
    }

    /// Action on `C ∪ {∞}` with `∞` encoded as `None`.
    pub fn apply_ext(&self, z: Option<C64>) -> Option<C64> {
        match z {
            Some(z) => self.apply(z),
            None if self.c == ZERO => None,
            None => Some(self.a / self.c),
        }
    }

    pub fn classify(&self, tol: f64) -> MatrixClass {
        classify_and_half_length(self, tol).0
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;

    fn mul(self, o: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Neg for Matrix2C {
    type Output = Matrix2C;

    fn neg(self) -> Matrix2C {
        self.scale(-ONE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum MatrixClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// `λ = (ℓ + iθ)/2` with `sign · 2 cosh λ = Tr`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HalfLength {
    pub lambda: C64,
    pub sign: i8,
}

impl HalfLength {
    /// Real translation length `ℓ = 2 Re λ`.
    pub fn length(&self) -> f64 {
        2.0 * self.lambda.re
    }

    /// Rotation angle `θ = 2 Im λ`.
    pub fn rotation(&self) -> f64 {
        2.0 * self.lambda.im
    }
}

/// Classifies by trace and returns the half complex length with
/// `Re λ >= 0` and `Im λ ∈ (−π/2, π/2]`; the trace sign absorbs the rest.
pub fn classify_and_half_length(m: &Matrix2C, tol: f64) -> (MatrixClass, HalfLength) {
    let t = m.trace();
    let class = if t.im.abs() <= tol && (t.re.abs() - 2.0).abs() <= tol {
        let s = if t.re > 0.0 { 1.0 } else { -1.0 };
        if m.max_abs_diff(&Matrix2C::identity().scale(s.into())) <= tol {
            MatrixClass::Identity
        } else {
            MatrixClass::Parabolic
        }
    } else if t.im.abs() <= tol && t.re.abs() < 2.0 {
        MatrixClass::Elliptic
    } else {
        MatrixClass::Loxodromic
    };
    (class, half_length_of_trace(t))
}

/// The half complex length of any element with this trace, normalized as in
/// [`classify_and_half_length`].
pub fn half_length_of_trace(t: C64) -> HalfLength {
    let mut lambda = (t / 2.0).acosh();
    let mut sign = 1i8;
    if lambda.re < 0.0 {
        lambda = -lambda;
    }
    if lambda.im > PI / 2.0 {
        lambda -= C64::new(0.0, PI);
        sign = -1;
    } else if lambda.im <= -PI / 2.0 {
        lambda += C64::new(0.0, PI);
        sign = -1;
    }
    HalfLength { lambda, sign }
}

/// Product of generator images along a word. The generators are scaled to
/// unit determinant first; products are never rescaled since `det` of a
/// large product is dominated by cancellation.
pub fn eval_word(w: &Word, a: &Matrix2C, b: &Matrix2C) -> Matrix2C {
    let gens = [a.normalized(), b.normalized()];
    let invs = [gens[0].inverse(), gens[1].inverse()];
    let mut m = Matrix2C::identity();
    for l in w.letters() {
        m = m * if l.inverse {
            invs[l.generator as usize]
        } else {
            gens[l.generator as usize]
        };
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_half_length() {
        let (c, h) = classify_and_half_length(&Matrix2C::real(2.0, 0.0, 0.0, 0.5), 1e-12);
        assert_eq!(c, MatrixClass::Loxodromic);
        assert!((h.length() - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert!(h.rotation().abs() < 1e-12);
    }

    #[test]
    fn parabolic_and_identity() {
        assert_eq!(
            Matrix2C::real(1.0, 1.0, 0.0, 1.0).classify(1e-12),
            MatrixClass::Parabolic
        );
        assert_eq!(
            Matrix2C::real(-1.0, 0.0, 0.0, -1.0).classify(1e-12),
            MatrixClass::Identity
        );
        assert_eq!(
            Matrix2C::real(0.0, 1.0, -1.0, 0.0).classify(1e-12),
            MatrixClass::Elliptic
        );
    }

    #[test]
    fn trace_three() {
        let m = Matrix2C::real(2.0, 1.0, 1.0, 1.0);
        let (c, h) = classify_and_half_length(&m, 1e-12);
        assert_eq!(c, MatrixClass::Loxodromic);
        assert!((h.lambda.re - 0.962_423_650_119_206_9).abs() < 1e-12);
        assert!((2.0 * h.lambda.cosh() - 3.0).norm() < 1e-12);
    }

    #[test]
    fn sign_lift() {
        for t in [
            C64::new(-3.0, 0.0),
            C64::new(-2.5, 0.7),
            C64::new(0.3, -4.0),
            C64::new(-1.0, -0.1),
        ] {
            let m = Matrix2C::new(t, C64::new(1.0, 0.0), C64::new(-1.0, 0.0), ZERO);
            let (_, h) = classify_and_half_length(&m, 1e-12);
            assert!(h.lambda.re >= 0.0);
            assert!(h.lambda.im > -PI / 2.0 && h.lambda.im <= PI / 2.0);
            assert!((2.0 * h.lambda.cosh() * f64::from(h.sign) - t).norm() < 1e-10);
        }
    }
}

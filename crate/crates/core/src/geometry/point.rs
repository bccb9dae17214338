use super::Matrix2C;
use crate::C64;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

/// Point `z + tj` of the upper half-space model, `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointH3 {
    pub z: C64,
    pub t: f64,
}

impl PointH3 {
    pub fn new(z: C64, t: f64) -> Self {
        debug_assert!(t > 0.0);
        Self { z, t }
    }

    /// The point `j = (0, 1)`.
    pub fn j() -> Self {
        Self::new(C64::new(0.0, 0.0), 1.0)
    }
}

/// Isometric action of `M ∈ SL(2, C)` on the upper half-space, via the
/// quaternion formula `(aP + b)(cP + d)⁻¹`. The determinant is taken to be 1
/// rather than recomputed, which would cancel badly for long products.
pub fn act(m: &Matrix2C, p: &PointH3) -> PointH3 {
    let (z, t) = (p.z, p.t);
    let cz_d = m.c * z + m.d;
    let den = cz_d.norm_sqr() + m.c.norm_sqr() * t * t;
    let num = (m.a * z + m.b) * cz_d.conj() + m.a * m.c.conj() * t * t;
    PointH3 {
        z: num / den,
        t: t / den,
    }
}

pub fn hyperbolic_distance(p: &PointH3, q: &PointH3) -> f64 {
    let dz = (p.z - q.z).norm_sqr();
    let dt = p.t - q.t;
    // 2 asinh(chord / 2) is accurate for nearby points
    2.0 * ((dz + dt * dt).sqrt() / (2.0 * (p.t * q.t).sqrt())).asinh()
}

/// `d(j, Mj)` from the entries of `M`.
pub fn displacement_of_j(m: &Matrix2C) -> f64 {
    (m.frobenius_sqr() / 2.0).max(1.0).acosh()
}

use super::{
    axis, classify_and_half_length, common_perpendicular, complex_distance, ComplexDist, Line,
    Matrix2C, MatrixClass,
};
use crate::{Error, MarkoffTriple, Result, C64};
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

/// A representative pair `(A, B)` with traces `(x, y, z)`:
/// `A = [[x, 1], [−1, 0]]`, `B = [[0, ξ], [−1/ξ, y]]` with `ξ² + zξ + 1 = 0`.
pub fn lift_triple(t: &MarkoffTriple, tol: f64) -> Result<(Matrix2C, Matrix2C)> {
    let mu = t.mu();
    if (mu - 4.0).norm() <= tol {
        return Err(Error::Reducible {
            mu_re: mu.re,
            mu_im: mu.im,
        });
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let disc = (t.z * t.z - 4.0).sqrt();
    let r1 = (-t.z + disc) / 2.0;
    let r2 = (-t.z - disc) / 2.0;
    let xi = match r1.norm().partial_cmp(&r2.norm()) {
        Some(core::cmp::Ordering::Greater) => r1,
        Some(core::cmp::Ordering::Less) => r2,
        _ => {
            if r1.arg() >= r2.arg() {
                r1
            } else {
                r2
            }
        }
    };
    let a = Matrix2C::new(t.x, one, -one, zero);
    let b = Matrix2C::new(zero, xi, -xi.inv(), t.y);
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmplitudeMode {
    Traces,
    Hexagon,
}

/// The right-angled hexagon with alternate sides `Ax U`, `Ax V`,
/// `Ax(U⁻¹V⁻¹)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HexagonData {
    pub sides: [Line; 6],
    /// `lengths[i]` is the complex distance between sides `i − 1` and `i + 1`.
    pub lengths: [ComplexDist; 6],
    pub amplitude: C64,
}

fn require_loxodromic(m: &Matrix2C) -> Result<()> {
    match classify_and_half_length(m, 1e-12).0 {
        MatrixClass::Loxodromic => Ok(()),
        _ => Err(Error::NotLoxodromic),
    }
}

pub fn standard_hexagon(u: &Matrix2C, v: &Matrix2C) -> Result<HexagonData> {
    let w = u.inverse() * v.inverse();
    for m in [u, v, &w] {
        require_loxodromic(m)?;
    }
    let (s2, s4, s6) = (axis(u, 1e-12)?, axis(v, 1e-12)?, axis(&w, 1e-12)?);
    let s1 = common_perpendicular(&s6, &s2)?;
    let s3 = common_perpendicular(&s2, &s4)?;
    let s5 = common_perpendicular(&s4, &s6)?;
    let sides = [s1, s2, s3, s4, s5, s6];
    let mut lengths = [ComplexDist { d: 0.0, theta: 0.0 }; 6];
    for i in 0..6 {
        lengths[i] = complex_distance(&sides[(i + 5) % 6], &sides[(i + 1) % 6])?;
    }
    // the amplitude from line matrices built algebraically, which stays
    // accurate when the hexagon has very short sides
    let (u, v) = centred_pair(u, v)?;
    let w = u.inverse() * v.inverse();
    let (r2, r4, r6) = (
        axis_line_matrix(&u)?,
        axis_line_matrix(&v)?,
        axis_line_matrix(&w)?,
    );
    let (r1, r3, r5) = (
        perpendicular_line_matrix(&r6, &r2)?,
        perpendicular_line_matrix(&r2, &r4)?,
        perpendicular_line_matrix(&r4, &r6)?,
    );
    let amplitude = -(r5 * r3 * r1).trace() / 2.0;
    Ok(HexagonData {
        sides,
        lengths,
        amplitude,
    })
}

/// Conjugates the pair so that `Ax U` runs from `0` to `∞` and the foot of
/// `Ax V` on it is `j`. Traces of products are unchanged; the entries are
/// then of the size of the hexagon rather than of its distance from `j`.
fn centred_pair(u: &Matrix2C, v: &Matrix2C) -> Result<(Matrix2C, Matrix2C)> {
    let n = axis(u, 1e-12)?.normalizer();
    let (u1, v1) = (
        u.normalized().conjugate_by(&n),
        v.normalized().conjugate_by(&n),
    );
    let (Some(w1), Some(w2)) = (axis(&v1, 1e-12)?.start, axis(&v1, 1e-12)?.end) else {
        return Ok((u1, v1));
    };
    let h = (w1 * w2).norm().sqrt();
    if !(h > 0.0 && h.is_finite()) {
        return Ok((u1, v1));
    }
    let s = h.sqrt();
    let d = Matrix2C::new(
        (1.0 / s).into(),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        s.into(),
    );
    Ok((u1.conjugate_by(&d), v1.conjugate_by(&d)))
}

/// `X / √det X` for a traceless `X`; a line matrix up to orientation.
fn unit_traceless(x: Matrix2C) -> Result<Matrix2C> {
    let det = x.det();
    if !(det.norm() > 0.0) || !det.norm().is_finite() {
        return Err(Error::SharedEndpoint);
    }
    Ok(x.scale(det.sqrt().inv()))
}

/// Line matrix of the axis of `U`, from `(U − U⁻¹)/2 = sinh λ · R`.
fn axis_line_matrix(u: &Matrix2C) -> Result<Matrix2C> {
    let u = u.normalized();
    let half = (u.a - u.d) / 2.0;
    unit_traceless(Matrix2C::new(half, u.b, u.c, -half))
}

/// Line matrix of the common perpendicular, from `(R₂R₁ − R₁R₂)/2 = sinh δ · R`.
fn perpendicular_line_matrix(r1: &Matrix2C, r2: &Matrix2C) -> Result<Matrix2C> {
    let (p, q) = (*r2 * *r1, *r1 * *r2);
    let half = ((p.a - q.a) - (p.d - q.d)) / 4.0;
    unit_traceless(Matrix2C::new(
        half,
        (p.b - q.b) / 2.0,
        (p.c - q.c) / 2.0,
        -half,
    ))
}

/// `−i sinh δ_UV sinh λ(U) sinh λ(V)`; the square is `(4 − μ)/4` in either
/// mode, the sign depends on the mode.
pub fn amplitude(u: &Matrix2C, v: &Matrix2C, mode: AmplitudeMode) -> Result<C64> {
    match mode {
        AmplitudeMode::Hexagon => Ok(standard_hexagon(u, v)?.amplitude),
        AmplitudeMode::Traces => {
            let w = u.inverse() * v.inverse();
            for m in [u, v, &w] {
                require_loxodromic(m)?;
            }
            let (cu, cv, cw) = (u.trace() / 2.0, v.trace() / 2.0, w.trace() / 2.0);
            let (su, sv) = ((cu * cu - 1.0).sqrt(), (cv * cv - 1.0).sqrt());
            let cosh_d = (cw - cu * cv) / (su * sv);
            let sinh_d = (cosh_d * cosh_d - 1.0).sqrt();
            Ok(C64::new(0.0, -1.0) * sinh_d * su * sv)
        }
    }
}

/// Complex distance between the axes of `U` and `V`.
pub fn axis_distance(u: &Matrix2C, v: &Matrix2C) -> Result<ComplexDist> {
    complex_distance(&axis(u, 1e-12)?, &axis(v, 1e-12)?)
}

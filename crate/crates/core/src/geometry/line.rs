use core::f64::consts::PI;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

use super::{act, classify_and_half_length, Matrix2C, MatrixClass, PointH3};
use crate::{Error, Result, C64};

/// Point of `C ∪ {∞}`; `None` is `∞`.
pub type Boundary = Option<C64>;

const I: C64 = C64::new(0.0, 1.0);

/// Oriented geodesic of `H³` from `start` to `end` on the sphere at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Line {
    pub start: Boundary,
    pub end: Boundary,
}

impl Line {
    pub fn new(start: Boundary, end: Boundary) -> Result<Self> {
        if same_point(start, end) {
            return Err(Error::SharedEndpoint);
        }
        Ok(Self { start, end })
    }

    pub fn finite(start: C64, end: C64) -> Result<Self> {
        Self::new(Some(start), Some(end))
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
        }
    }

    pub fn image(&self, m: &Matrix2C) -> Line {
        Line {
            start: m.apply_ext(self.start),
            end: m.apply_ext(self.end),
        }
    }

    pub fn shares_endpoint(&self, o: &Line) -> bool {
        [self.start, self.end]
            .iter()
            .any(|p| same_point(*p, o.start) || same_point(*p, o.end))
    }

    /// Möbius map sending `start` to `0` and `end` to `∞`.
    pub fn normalizer(&self) -> Matrix2C {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        match (self.start, self.end) {
            (Some(z1), Some(z2)) => Matrix2C::new(one, -z1, one, -z2).scale((z1 - z2).sqrt().inv()),
            (Some(z1), None) => Matrix2C::new(one, -z1, zero, one),
            (None, Some(z2)) => Matrix2C::new(zero, one, -one, z2),
            (None, None) => unreachable!("line with equal endpoints"),
        }
    }

    /// The point at signed distance `s` from the normalized base point.
    pub fn point_at(&self, s: f64) -> PointH3 {
        let n_inv = self.normalizer().inverse();
        act(&n_inv, &PointH3::new(C64::new(0.0, 0.0), s.exp()))
    }
}

fn same_point(p: Boundary, q: Boundary) -> bool {
    match (p, q) {
        (None, None) => true,
        (Some(a), Some(b)) => (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm())),
        _ => false,
    }
}

/// Half-turn about the line, lifted to `SL(2, C)`; squares to `−I` and
/// changes sign with the orientation.
pub fn line_matrix(l: &Line) -> Matrix2C {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match (l.start, l.end) {
        (Some(z), Some(w)) => {
            Matrix2C::new(z + w, -2.0 * z * w, 2.0 * one, -z - w).scale(I / (w - z))
        }
        (Some(z), None) => Matrix2C::new(one, -2.0 * z, zero, -one).scale(I),
        (None, Some(w)) => Matrix2C::new(one, -2.0 * w, zero, -one).scale(-I),
        (None, None) => unreachable!("line with equal endpoints"),
    }
}

/// Fixed points of a non-parabolic element, oriented from the repelling to
/// the attracting fixed point (for elliptics, the rotation is positive about
/// the oriented axis).
pub fn axis(m: &Matrix2C, tol: f64) -> Result<Line> {
    let (class, _) = classify_and_half_length(m, tol);
    if matches!(class, MatrixClass::Identity | MatrixClass::Parabolic) {
        return Err(Error::NoAxis);
    }
    let m = m.normalized();
    let t = m.trace();
    let scale = m.frobenius_sqr().sqrt();
    // multiplier at a finite fixed point ζ is (cζ + d)^(−2)
    let starts_here = |mult: C64| {
        let l = mult.ln();
        l.re > 1e-14 || (l.re.abs() <= 1e-14 && l.im > 0.0)
    };
    if m.c.norm() <= 1e-15 * scale {
        if (m.d - m.a).norm() <= 1e-15 * scale {
            return Err(Error::NoAxis);
        }
        let z = m.b / (m.d - m.a);
        let mult = m.a / m.d;
        return Ok(if starts_here(mult) {
            Line {
                start: Some(z),
                end: None,
            }
        } else {
            Line {
                start: None,
                end: Some(z),
            }
        });
    }
    let disc = (t * t - 4.0).sqrt();
    // roots of cz² + (d − a)z − b: take the one without cancellation, the
    // other from their product −b/c
    let s = if (m.a - m.d + disc).norm() >= (m.a - m.d - disc).norm() {
        disc
    } else {
        -disc
    };
    let q = m.a - m.d + s;
    let (z1, z2) = (q / (2.0 * m.c), -2.0 * m.b / q);
    // cz₁ + d is the eigenvalue (t + s)/2
    let mult1 = ((t + s) / 2.0).powi(-2);
    let line = if starts_here(mult1) {
        Line::finite(z1, z2)
    } else {
        Line::finite(z2, z1)
    };
    line.map_err(|_| Error::NoAxis)
}

/// Complex distance `d + iθ` between oriented lines, `d >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComplexDist {
    pub d: f64,
    pub theta: f64,
}

impl ComplexDist {
    pub fn to_complex(&self) -> C64 {
        C64::new(self.d, self.theta)
    }

    /// Normalizes to `d >= 0` and `θ ∈ (−π, π]`.
    pub fn from_complex(z: C64) -> Self {
        let mut z = z;
        if z.re < 0.0 {
            z = -z;
        }
        let mut theta = z.im;
        while theta > PI {
            theta -= 2.0 * PI;
        }
        while theta <= -PI {
            theta += 2.0 * PI;
        }
        if z.re == 0.0 && theta < 0.0 {
            theta = -theta;
        }
        Self { d: z.re, theta }
    }

    /// Distance to a right-angled crossing.
    pub fn perpendicular_residual(&self) -> f64 {
        self.d.max((self.theta.abs() - PI / 2.0).abs())
    }
}

/// `cosh δ = −Tr(R₁R₂)/2`.
pub fn complex_distance(l1: &Line, l2: &Line) -> Result<ComplexDist> {
    if l1.shares_endpoint(l2) {
        return Err(Error::SharedEndpoint);
    }
    let r = line_matrix(l1) * line_matrix(l2);
    let c = -r.trace() / 2.0;
    Ok(ComplexDist::from_complex(c.acosh()))
}

/// The line perpendicular to both: the axis of the screw motion `R₁R₂`.
pub fn common_perpendicular(l1: &Line, l2: &Line) -> Result<Line> {
    if l1.shares_endpoint(l2) {
        return Err(Error::SharedEndpoint);
    }
    axis(&(line_matrix(l1) * line_matrix(l2)), 0.0)
}

/// Point of `l1` closest to `l2`.
pub fn foot_on(l1: &Line, l2: &Line) -> Result<PointH3> {
    if l1.shares_endpoint(l2) {
        return Err(Error::SharedEndpoint);
    }
    let n = l1.normalizer();
    let img = l2.image(&n);
    let (Some(w1), Some(w2)) = (img.start, img.end) else {
        return Err(Error::SharedEndpoint);
    };
    let h = (w1 * w2).norm().sqrt();
    Ok(act(&n.inverse(), &PointH3::new(C64::new(0.0, 0.0), h)))
}

/// Distance from a point to a line.
pub fn distance_to_line(p: &PointH3, l: &Line) -> f64 {
    let q = act(&l.normalizer(), p);
    // distance to the vertical axis: sinh d = |z| / t
    (q.z.norm() / q.t).asinh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hyperbolic_distance;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn line_matrices() {
        let l = Line::new(Some(c(0.0, 0.0)), None).unwrap();
        let r = line_matrix(&l);
        assert!(r.max_abs_diff(&Matrix2C::new(I, c(0.0, 0.0), c(0.0, 0.0), -I)) < 1e-15);
        assert!(line_matrix(&l.reversed()).max_abs_diff(&-r) < 1e-15);
        let m = line_matrix(&Line::finite(c(-1.0, 0.0), c(1.0, 0.0)).unwrap());
        assert!((m * m).max_abs_diff(&-Matrix2C::identity()) < 1e-15);
        assert!((m.det() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn axes() {
        let d = Matrix2C::real(2.0, 0.0, 0.0, 0.5);
        assert_eq!(
            axis(&d, 1e-12).unwrap(),
            Line {
                start: Some(c(0.0, 0.0)),
                end: None
            }
        );
        let shift = Matrix2C::real(1.0, 1.0, 0.0, 1.0);
        let l = axis(&d.conjugate_by(&shift), 1e-12).unwrap();
        assert!((l.start.unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(l.end, None);
        assert_eq!(axis(&shift, 1e-12), Err(Error::NoAxis));
        // inverse reverses the axis
        let m = Matrix2C::new(c(1.0, 2.0), c(0.5, 0.0), c(0.3, -1.0), c(2.0, 0.0)).normalized();
        let (a, b) = (axis(&m, 1e-12).unwrap(), axis(&m.inverse(), 1e-12).unwrap());
        assert!((a.start.unwrap() - b.end.unwrap()).norm() < 1e-10);
    }

    #[test]
    fn distances_between_lines() {
        let s = 0.7f64;
        let z = s.exp();
        let l1 = Line::finite(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let l2 = Line::finite(c(-z, 0.0), c(z, 0.0)).unwrap();
        let d = complex_distance(&l1, &l2).unwrap();
        assert!((d.d - s).abs() < 1e-12 && d.theta.abs() < 1e-12);
        let v = Line::new(Some(c(0.0, 0.0)), None).unwrap();
        let d = complex_distance(&v, &l1).unwrap();
        assert!(d.d.abs() < 1e-12 && (d.theta.abs() - PI / 2.0).abs() < 1e-12);
        let far = Line::finite(c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let d = complex_distance(&v, &far).unwrap();
        let oracle = min_distance(&v, &far);
        assert!((d.d - oracle).abs() < 1e-6, "{} vs {}", d.d, oracle);
        assert_eq!(
            complex_distance(&v, &Line::finite(c(0.0, 0.0), c(1.0, 0.0)).unwrap()),
            Err(Error::SharedEndpoint)
        );
    }

    #[test]
    fn perpendiculars() {
        let v = Line::new(Some(c(0.0, 0.0)), None).unwrap();
        let w = Line::finite(c(-2.0, 0.0), c(2.0, 0.0)).unwrap();
        // intersecting lines
        let p = common_perpendicular(&v, &w).unwrap();
        assert!(complex_distance(&p, &v).unwrap().perpendicular_residual() < 1e-12);
        assert!(complex_distance(&p, &w).unwrap().perpendicular_residual() < 1e-12);
        // skew lines
        let u = Line::finite(c(1.0, 1.0), c(3.0, -0.5)).unwrap();
        let p = common_perpendicular(&v, &u).unwrap();
        assert!(complex_distance(&p, &v).unwrap().perpendicular_residual() < 1e-10);
        assert!(complex_distance(&p, &u).unwrap().perpendicular_residual() < 1e-10);
        let f1 = foot_on(&v, &u).unwrap();
        let f2 = foot_on(&u, &v).unwrap();
        let d = complex_distance(&v, &u).unwrap().d;
        assert!((hyperbolic_distance(&f1, &f2) - d).abs() < 1e-10);
        assert!((d - min_distance(&v, &u)).abs() < 1e-6);
        assert!(distance_to_line(&f1, &p) < 1e-9);
        assert_eq!(
            common_perpendicular(&v, &Line::finite(c(0.0, 0.0), c(1.0, 0.0)).unwrap()),
            Err(Error::SharedEndpoint)
        );
    }

    /// Golden-section minimization of the distance over both lines.
    fn min_distance(l1: &Line, l2: &Line) -> f64 {
        let inner = |s: f64| {
            golden(
                |r| hyperbolic_distance(&l1.point_at(s), &l2.point_at(r)),
                -30.0,
                30.0,
            )
        };
        golden(inner, -30.0, 30.0)
    }

    fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..200 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = f(x2);
            }
        }
        f1.min(f2)
    }
}

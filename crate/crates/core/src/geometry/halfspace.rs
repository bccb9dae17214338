use alloc::vec::Vec;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

use super::{axis, classify_and_half_length, complex_distance, Matrix2C, MatrixClass};
use crate::{Error, Result, C64};

/// Half-space of `H³` bounded by a hemisphere or vertical plane, stored as
/// the Hermitian form `Q(z) = a|z|² + 2 Re(b̄ z) + c` of its boundary circle;
/// the half-space lies over `{Q < 0}`. Normalized to `ac − |b|² = −1`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HalfSpace {
    pub a: f64,
    pub b: C64,
    pub c: f64,
}

impl HalfSpace {
    pub fn new(a: f64, b: C64, c: f64) -> Self {
        let det = a * c - b.norm_sqr();
        debug_assert!(det < 0.0, "degenerate circle");
        let s = (-det).sqrt().recip();
        Self {
            a: a * s,
            b: b * s,
            c: c * s,
        }
    }

    /// `{|z| > r}`
    pub fn outside_circle(r: f64) -> Self {
        Self::new(-1.0, C64::new(0.0, 0.0), r * r)
    }

    pub fn q(&self, z: C64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.conj() * z).re + self.c
    }

    pub fn contains(&self, z: C64) -> bool {
        self.q(z) < 0.0
    }

    /// Image under `M`: the form `(M⁻¹)ᴴ H M⁻¹`.
    pub fn image(&self, m: &Matrix2C) -> Self {
        self.transform(&m.inverse())
    }

    /// The form `Nᴴ H N`, the preimage under `N`.
    pub fn transform(&self, n: &Matrix2C) -> Self {
        // Q(z) = [z̄ 1] H [z 1]ᵀ with H = [[a, b], [b̄, c]]
        let h = Matrix2C::new(self.a.into(), self.b, self.b.conj(), self.c.into());
        let r = n.conj_transpose() * h * *n;
        Self::new(r.a.re, r.b, r.d.re)
    }

    /// A point of the boundary circle.
    pub fn boundary_point(&self) -> C64 {
        if self.a.abs() > 1e-300 {
            let center = -self.b / self.a;
            let r = (1.0 / (self.a * self.a)).sqrt();
            center + r
        } else {
            -self.b * self.c / (2.0 * self.b.norm_sqr())
        }
    }

    /// Minkowski pairing; `< −1` for nested disjoint half-spaces, whose
    /// boundaries are then `acosh(−pairing)` apart.
    pub fn pairing(&self, o: &HalfSpace) -> f64 {
        (self.a * o.c + o.a * self.c) / 2.0 - (self.b * o.b.conj()).re
    }

    /// `inner ⊂ self` with disjoint closures; returns the boundary separation.
    pub fn properly_contains(&self, inner: &HalfSpace) -> Option<f64> {
        let p = self.pairing(inner);
        if p < -1.0 && self.contains(inner.boundary_point()) {
            Some((-p).acosh())
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NestingRelation {
    pub x: char,
    pub y: char,
    /// Whether `X⁻¹Ĥ ⊃ Ĥ ⊃ YĤ` holds properly.
    pub nested: bool,
    /// Smaller of the two boundary separations; negative when not nested.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NestingReport {
    pub halfspace: HalfSpace,
    pub relations: Vec<NestingRelation>,
    pub all_nested: bool,
    /// `Re δ_AB`, distance between the axes.
    pub axis_distance: f64,
    /// `|Im δ_AB|`
    pub axis_angle: f64,
}

/// Builds the plane orthogonal to `Ax B` through the common perpendicular of
/// the axes (through their crossing point if they meet), and tests the four nestings `X⁻¹Ĥ ⊃ Ĥ ⊃ YĤ`, `X, Y ∈ {A, B}`.
pub fn nested_halfspace_check(a: &Matrix2C, b: &Matrix2C) -> Result<NestingReport> {
    for m in [a, b] {
        match classify_and_half_length(m, 1e-12).0 {
            MatrixClass::Loxodromic => {}
            MatrixClass::Elliptic => return Err(Error::AxesIntersect),
            _ => return Err(Error::NotLoxodromic),
        }
    }
    let (ax_a, ax_b) = (axis(a, 1e-12)?, axis(b, 1e-12)?);
    // crossing axes are allowed: the perpendicular shrinks to the crossing point
    let delta = complex_distance(&ax_a, &ax_b)?;
    let n = ax_b.normalizer();
    let img = ax_a.image(&n);
    let (Some(w1), Some(w2)) = (img.start, img.end) else {
        return Err(Error::SharedEndpoint);
    };
    let h = (w1 * w2).norm().sqrt();
    let hs = HalfSpace::outside_circle(h).transform(&n);
    let mut relations = Vec::with_capacity(4);
    for (xn, x) in [('A', a), ('B', b)] {
        for (yn, y) in [('A', a), ('B', b)] {
            let outer = hs.image(&x.inverse());
            let inner = hs.image(y);
            let m1 = outer.properly_contains(&hs);
            let m2 = hs.properly_contains(&inner);
            let (nested, margin) = match (m1, m2) {
                (Some(p), Some(q)) => (true, p.min(q)),
                _ => (false, -1.0),
            };
            relations.push(NestingRelation {
                x: xn,
                y: yn,
                nested,
                margin,
            });
        }
    }
    let all_nested = relations.iter().all(|r| r.nested);
    Ok(NestingReport {
        halfspace: hs,
        relations,
        all_nested,
        axis_distance: delta.d,
        axis_angle: delta.theta.abs(),
    })
}

use alloc::vec::Vec;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

use super::{act, displacement_of_j, hyperbolic_distance, Matrix2C, PointH3};
use crate::word::Word;

/// Vertices of the broken geodesic of `w`: one backward period
/// `w⁻¹O, …, Eₙ⁻¹O`, then `O`, then `copies` forward periods
/// `E₁O, E₁E₂O, …`. `copies·|w| + |w| + 1` points in path order.
pub fn broken_geodesic(
    w: &Word,
    a: &Matrix2C,
    b: &Matrix2C,
    o: &PointH3,
    copies: usize,
) -> Vec<PointH3> {
    let gens = [a.normalized(), b.normalized()];
    let invs = [gens[0].inverse(), gens[1].inverse()];
    let letter = |g: u8, inv: bool| {
        if inv {
            invs[g as usize]
        } else {
            gens[g as usize]
        }
    };
    let n = w.len();
    let mut backward = Vec::with_capacity(n);
    let mut m = Matrix2C::identity();
    for l in w.letters().iter().rev() {
        m = m * letter(l.generator, !l.inverse);
        backward.push(act(&m, o));
    }
    let mut out: Vec<PointH3> = backward.into_iter().rev().collect();
    out.push(*o);
    let mut m = Matrix2C::identity();
    for _ in 0..copies {
        for l in w.letters() {
            m = m * letter(l.generator, l.inverse);
            out.push(act(&m, o));
        }
    }
    out
}

/// Smallest `K` for which `(m−n)/K − ε <= d(Pₙ, Pₘ) <= K(m−n) + ε` holds
/// on the path with this `K` derived from steps and pairwise ratios.
/// `+∞` when some `d(Pₙ, Pₘ) + ε` vanishes.
pub fn quasigeodesic_constants(path: &[PointH3], eps: f64) -> f64 {
    constant_from_distances(path.len(), eps, |i, j| {
        hyperbolic_distance(&path[i], &path[j])
    })
}

/// The constant of [`quasigeodesic_constants`] for the broken geodesic of
/// `w`, with distances taken from products of the letters rather than from
/// the vertices. Far vertices crowd the sphere at infinity, where point
/// coordinates no longer resolve their distances; `d(O, gO)` computed from
/// the entries of `g` conjugated to act at `j` stays accurate.
pub fn word_quasigeodesic_constant(
    w: &Word,
    a: &Matrix2C,
    b: &Matrix2C,
    o: &PointH3,
    copies: usize,
    eps: f64,
) -> f64 {
    // N j = O
    let s = o.t.sqrt();
    let n = Matrix2C::new(s.into(), o.z / s, 0.0.into(), (1.0 / s).into());
    let n_inv = n.inverse();
    let gens = [
        a.normalized().conjugate_by(&n_inv),
        b.normalized().conjugate_by(&n_inv),
    ];
    let invs = [gens[0].inverse(), gens[1].inverse()];
    // consecutive vertices differ by one letter; the backward period reads w too
    let steps: Vec<Matrix2C> = (0..=copies)
        .flat_map(|_| w.letters().iter())
        .map(|l| {
            if l.inverse {
                invs[l.generator as usize]
            } else {
                gens[l.generator as usize]
            }
        })
        .collect();
    let count = steps.len() + 1;
    let mut table = alloc::vec![0.0; count * count];
    for i in 0..count {
        let mut g = Matrix2C::identity();
        for j in i + 1..count {
            g = g * steps[j - 1];
            table[i * count + j] = displacement_of_j(&g);
        }
    }
    constant_from_distances(count, eps, |i, j| table[i * count + j])
}

fn constant_from_distances(count: usize, eps: f64, dist: impl Fn(usize, usize) -> f64) -> f64 {
    let mut k: f64 = 0.0;
    for i in 1..count {
        k = k.max(dist(i - 1, i));
    }
    for i in 0..count {
        for j in i + 1..count {
            let d = dist(i, j) + eps;
            if d <= 0.0 {
                return f64::INFINITY;
            }
            k = k.max((j - i) as f64 / d);
        }
    }
    k
}

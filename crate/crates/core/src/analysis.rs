//! Finite-depth verifiers: quasigeodesic constants of broken geodesics,
//! intersections of palindromic axes with the hyperelliptic axes, decay of
//! angles between neighbouring axes, and descending palindromic chains.

use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

use crate::bq::{decide_bq, BqOutcome, BqParams, Certificate};
use crate::farey::{enumerate_primitives, mod2_type, palindromic_representative, BasicPair};
use crate::geometry::{
    axis, classify_and_half_length, common_perpendicular, complex_distance, eval_word, foot_on,
    half_length_of_trace, hyperbolic_distance, lift_triple, word_quasigeodesic_constant,
    ComplexDist, Line, Matrix2C, MatrixClass, PointH3,
};
use crate::markoff::{trace_of_fraction, ValueMap};
use crate::tree::{edges_to_level, level, parents};
use crate::{Error, Fraction, MarkoffTriple, Result, C64};

/// Tolerance on `|μ − 4|` used when lifting a triple.
pub const LIFT_TOL: f64 = 1e-9;

/// Foot of the common perpendicular of `Ax A` and `Ax B` on `Ax A`, or `j`
/// when either axis is missing.
pub fn canonical_basepoint(a: &Matrix2C, b: &Matrix2C) -> PointH3 {
    match (axis(a, 1e-12), axis(b, 1e-12)) {
        (Ok(la), Ok(lb)) => foot_on(&la, &lb).unwrap_or(PointH3::j()),
        _ => PointH3::j(),
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsRecord {
    pub fraction: Fraction,
    pub word_len: usize,
    pub trace: C64,
    pub k: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsReport {
    pub depth: u64,
    pub eps: f64,
    pub copies: usize,
    pub basepoint: PointH3,
    pub records: Vec<PsRecord>,
    /// Largest finite-or-infinite `K` over all classes.
    pub k_star: f64,
    pub flagged: Vec<Fraction>,
    /// Up to five classes with the largest `K`.
    pub worst: Vec<Fraction>,
}

/// Quasigeodesic constants of the broken geodesics of all primitive classes
/// with `|p| + q <= depth`. A class is flagged when `K = ∞` or its image is
/// not loxodromic (trace within `tol` of `[−2, 2]`).
pub fn ps_scan(
    t: &MarkoffTriple,
    depth: u64,
    eps: f64,
    copies: usize,
    basepoint: Option<PointH3>,
    tol: f64,
) -> Result<PsReport> {
    let (a, b) = lift_triple(t, LIFT_TOL)?;
    let o = basepoint.unwrap_or_else(|| canonical_basepoint(&a, &b));
    let mut records = Vec::new();
    for (f, w) in enumerate_primitives(depth) {
        let m = eval_word(&w, &a, &b);
        let trace = m.trace();
        let k = word_quasigeodesic_constant(&w, &a, &b, &o, copies, eps);
        let flagged = k.is_infinite() || crate::bq::near_interval(trace, tol);
        records.push(PsRecord {
            fraction: f,
            word_len: w.len(),
            trace,
            k,
            flagged,
        });
    }
    records.sort_by(|x, y| x.fraction.cmp(&y.fraction));
    let k_star = records.iter().map(|r| r.k).fold(0.0, f64::max);
    let flagged = records
        .iter()
        .filter(|r| r.flagged)
        .map(|r| r.fraction.clone())
        .collect();
    let mut by_k: Vec<&PsRecord> = records.iter().collect();
    by_k.sort_by(|x, y| {
        y.k.total_cmp(&x.k)
            .then_with(|| x.fraction.cmp(&y.fraction))
    });
    let worst = by_k.iter().take(5).map(|r| r.fraction.clone()).collect();
    Ok(PsReport {
        depth,
        eps,
        copies,
        basepoint: o,
        records,
        k_star,
        flagged,
        worst,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BipRecord {
    pub fraction: Fraction,
    pub pair: BasicPair,
    pub word: String,
    /// `None` when the palindrome's image has no axis.
    pub intersection: Option<PointH3>,
    pub distance: f64,
    /// `max(d, ||θ| − π/2|)` for the complex distance to the hyperelliptic axis.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BipReport {
    pub depth: u64,
    pub basepoint: PointH3,
    /// `ℰ(A,B)`, `ℰ(A,AB)`, `ℰ(B,AB)` in the order of [`BasicPair::ALL`].
    pub axes: [Line; 3],
    pub records: Vec<BipRecord>,
    /// Largest distance to the basepoint, per hyperelliptic axis.
    pub max_distance: [f64; 3],
    pub max_residual: f64,
    /// Palindromes whose image has no axis.
    pub skipped: Vec<(Fraction, BasicPair)>,
}

impl BipReport {
    pub fn d(&self) -> f64 {
        self.max_distance.iter().copied().fold(0.0, f64::max)
    }
}

fn pair_index(p: BasicPair) -> usize {
    BasicPair::ALL
        .iter()
        .position(|q| *q == p)
        .expect("pair in ALL")
}

fn pair_generators(p: BasicPair, a: &Matrix2C, b: &Matrix2C) -> [Matrix2C; 2] {
    let ab = *a * *b;
    match p {
        BasicPair::AB => [*a, *b],
        BasicPair::AAb => [*a, ab],
        BasicPair::BAb => [*b, ab],
    }
}

pub fn bip_scan(t: &MarkoffTriple, depth: u64) -> Result<BipReport> {
    let (a, b) = lift_triple(t, LIFT_TOL)?;
    bip_scan_matrices(&a, &b, depth)
}

/// Hyperelliptic axes of the three basic pairs.
pub fn hyperelliptic_axes(a: &Matrix2C, b: &Matrix2C) -> Result<[Line; 3]> {
    let ab = *a * *b;
    let (la, lb, lab) = (axis(a, 1e-12)?, axis(b, 1e-12)?, axis(&ab, 1e-12)?);
    Ok([
        common_perpendicular(&la, &lb)?,
        common_perpendicular(&la, &lab)?,
        common_perpendicular(&lb, &lab)?,
    ])
}

pub fn bip_scan_matrices(a: &Matrix2C, b: &Matrix2C, depth: u64) -> Result<BipReport> {
    let axes = hyperelliptic_axes(a, b)?;
    let o = canonical_basepoint(a, b);
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut max_distance = [0.0f64; 3];
    let mut max_residual = 0.0f64;
    for (f, _) in enumerate_primitives(depth) {
        if f.is_negative() {
            continue;
        }
        for pair in BasicPair::admissible_for(mod2_type(&f)) {
            let word = palindromic_representative(&f, pair)?;
            let [g0, g1] = pair_generators(pair, a, b);
            let m = eval_word(&word, &g0, &g1);
            let e = &axes[pair_index(pair)];
            let rendered = word.render(pair.letter_names());
            let record = match axis(&m, 1e-9) {
                Err(Error::NoAxis) => {
                    skipped.push((f.clone(), pair));
                    BipRecord {
                        fraction: f.clone(),
                        pair,
                        word: rendered,
                        intersection: None,
                        distance: 0.0,
                        residual: 0.0,
                    }
                }
                Err(err) => return Err(err),
                Ok(pal) => {
                    let cd = complex_distance(&pal, e)?;
                    let p = foot_on(e, &pal)?;
                    let distance = hyperbolic_distance(&o, &p);
                    let i = pair_index(pair);
                    max_distance[i] = max_distance[i].max(distance);
                    max_residual = max_residual.max(cd.perpendicular_residual());
                    BipRecord {
                        fraction: f.clone(),
                        pair,
                        word: rendered,
                        intersection: Some(p),
                        distance,
                        residual: cd.perpendicular_residual(),
                    }
                }
            };
            records.push(record);
        }
    }
    Ok(BipReport {
        depth,
        basepoint: o,
        axes,
        records,
        max_distance,
        max_residual,
        skipped,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AngleRecord {
    pub u: Fraction,
    pub v: Fraction,
    pub length_u: f64,
    pub length_v: f64,
    pub delta: ComplexDist,
    /// `|sinh δ_UV|`
    pub sinh_abs: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AngleReport {
    pub depth: usize,
    pub records: Vec<AngleRecord>,
    /// `sup |sinh δ_UV| e^{max(ℓ(U), ℓ(V))}`
    pub k: f64,
    /// `sup |sinh δ_UV| e^{(ℓ(U) + ℓ(V))/2}`
    pub k_half: f64,
    /// Largest `|Im δ_UV|` per edge level.
    pub max_angle_by_level: Vec<f64>,
}

/// Half length and axis data for a neighbour pair of elements.
pub fn angle_record(
    u: &Fraction,
    v: &Fraction,
    mu_: &Matrix2C,
    mv: &Matrix2C,
) -> Result<AngleRecord> {
    let (cu, hu) = classify_and_half_length(mu_, 1e-12);
    let (cv, hv) = classify_and_half_length(mv, 1e-12);
    if cu != MatrixClass::Loxodromic || cv != MatrixClass::Loxodromic {
        return Err(Error::NotLoxodromic);
    }
    let delta = complex_distance(&axis(mu_, 1e-12)?, &axis(mv, 1e-12)?)?;
    Ok(AngleRecord {
        u: u.clone(),
        v: v.clone(),
        length_u: hu.length(),
        length_v: hv.length(),
        sinh_abs: delta.to_complex().sinh().norm(),
        delta,
    })
}

fn require_certificate(t: &MarkoffTriple, params: &BqParams) -> Result<Certificate> {
    match decide_bq(t, params) {
        BqOutcome::Certified(c) => Ok(*c),
        _ => Err(Error::NotCertified),
    }
}

// complex division that does not square the divisor's modulus
fn div_scaled(z: C64, w: C64) -> C64 {
    let n = w.norm();
    (z / n) * (w.conj() / n)
}

fn loxodromic_trace(t: C64, tol: f64) -> bool {
    !(t.im.abs() <= tol && t.re.abs() <= 2.0 + tol)
}

/// Same record as [`angle_record`], computed from the traces of `U`, `V`,
/// `UV` and the commutator invariant `mu` alone.
///
/// Deep in the tree neighbouring axes are closer than double precision can
/// resolve from their endpoints, while the traces still determine
/// `cosh δ` and `sinh² δ` to full relative accuracy.
pub fn angle_record_from_traces(
    u: &Fraction,
    v: &Fraction,
    tu: C64,
    tv: C64,
    tuv: C64,
    mu: C64,
) -> Result<AngleRecord> {
    if !loxodromic_trace(tu, 1e-12) || !loxodromic_trace(tv, 1e-12) {
        return Err(Error::NotLoxodromic);
    }
    let (hu, hv) = (half_length_of_trace(tu), half_length_of_trace(tv));
    let (su, sv) = (hu.lambda.sinh(), hv.lambda.sinh());
    let (cu, cv) = (hu.lambda.cosh(), hv.lambda.cosh());
    let sign = f64::from(hu.sign * hv.sign);
    let sinh_sq = [su, su, sv, sv]
        .iter()
        .fold((mu - 4.0) / 4.0, |acc, w| div_scaled(acc, *w));
    // sign chosen to match the orientation convention of `complex_distance`
    let cosh_target = div_scaled(div_scaled(tuv * (sign / 2.0) - cu * cv, su), sv);
    let first = sinh_sq.sqrt().asinh();
    let second = C64::new(0.0, core::f64::consts::PI) - first;
    let delta = if (first.cosh() - cosh_target).norm() <= (second.cosh() - cosh_target).norm() {
        first
    } else {
        second
    };
    let delta = ComplexDist::from_complex(delta);
    Ok(AngleRecord {
        u: u.clone(),
        v: v.clone(),
        length_u: hu.length(),
        length_v: hv.length(),
        sinh_abs: sinh_sq.norm().sqrt(),
        delta,
    })
}

/// Axis data for every positive neighbour pair on edges of level below `depth`.
pub fn angle_decay_scan(t: &MarkoffTriple, depth: usize, params: &BqParams) -> Result<AngleReport> {
    require_certificate(t, params)?;
    let mu = t.mu();
    let mut values = ValueMap::new(*t);
    let mut records = Vec::new();
    let mut max_angle_by_level = alloc::vec![0.0f64; depth];
    let (mut k, mut k_half) = (0.0f64, 0.0f64);
    for e in edges_to_level(depth) {
        if e.u.is_negative() || e.v.is_negative() {
            continue;
        }
        let tu = trace_of_fraction(&mut values, &e.u)?;
        let tv = trace_of_fraction(&mut values, &e.v)?;
        let tuv = trace_of_fraction(&mut values, &e.u.farey_sum(&e.v)?)?;
        let r = angle_record_from_traces(&e.u, &e.v, tu, tv, tuv, mu)?;
        k = k.max(r.sinh_abs * r.length_u.max(r.length_v).exp());
        k_half = k_half.max(r.sinh_abs * ((r.length_u + r.length_v) / 2.0).exp());
        let lv = level(&e.u).max(level(&e.v));
        max_angle_by_level[lv] = max_angle_by_level[lv].max(r.delta.theta.abs());
        records.push(r);
    }
    Ok(AngleReport {
        depth,
        records,
        k,
        k_half,
        max_angle_by_level,
    })
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChainEntry {
    pub fraction: Fraction,
    pub word: String,
    /// Intersection of the palindromic axis with the hyperelliptic axis.
    pub foot: Option<PointH3>,
    /// Complex distance to the next palindromic axis.
    pub to_next: Option<ComplexDist>,
    /// Distance along the hyperelliptic axis to the next foot.
    pub step: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChainReport {
    pub pair: BasicPair,
    pub entries: Vec<ChainEntry>,
    pub terminal: Fraction,
    /// Every exit edge was crossed along a strictly descending T-arrow.
    pub descending: bool,
    pub total_step: f64,
    /// Distance between the first and last feet.
    pub end_to_end: f64,
}

/// Regions of the explored part of a certificate: the four regions of every
/// explored edge frame.
pub fn core_regions(c: &Certificate) -> alloc::collections::BTreeSet<Fraction> {
    c.explored
        .iter()
        .flat_map(|e| e.frame.regions().into_iter().cloned())
        .collect()
}

/// Follows the descending T-arrows out of `f` towards the certified core.
/// Each step leaves the current region through the edge between its
/// Stern–Brocot parents and moves to the parent of the other member type of
/// the pair, which is again a neighbour palindromic for the same pair.
pub fn palindromic_chain(
    f: &Fraction,
    pair: BasicPair,
    t: &MarkoffTriple,
    params: &BqParams,
) -> Result<ChainReport> {
    if !pair.admits(mod2_type(f)) {
        return Err(Error::NotAdmissible {
            fraction: f.clone(),
            pair: pair.label(),
        });
    }
    let cert = require_certificate(t, params)?;
    let core = core_regions(&cert);
    let mut vm = ValueMap::new(*t);
    let mut chain = alloc::vec![f.clone()];
    let mut descending = true;
    let mut current = f.clone();
    while !core.contains(&current) {
        let Some((l, r)) = parents(&current) else {
            break;
        };
        // the exit edge (l, r) has far region `current`
        let far = vm.value(&current)?;
        let near_region = l.vec_sub(&r);
        let near = vm.value(&near_region)?;
        if !(far.norm() > near.norm()) {
            descending = false;
        }
        let other = if mod2_type(&l) != mod2_type(&current) && pair.admits(mod2_type(&l)) {
            l
        } else {
            r
        };
        chain.push(other.clone());
        current = other;
    }
    let (a, b) = lift_triple(t, LIFT_TOL)?;
    let e = hyperelliptic_axes(&a, &b)?[pair_index(pair)];
    let [g0, g1] = pair_generators(pair, &a, &b);
    let mut entries = Vec::with_capacity(chain.len());
    let mut axes = Vec::with_capacity(chain.len());
    for g in &chain {
        let word = palindromic_representative(g, pair)?;
        let m = eval_word(&word, &g0, &g1);
        let ax = axis(&m, 1e-9).ok();
        let foot = ax.and_then(|l| foot_on(&e, &l).ok());
        axes.push(ax);
        entries.push(ChainEntry {
            fraction: g.clone(),
            word: word.render(pair.letter_names()),
            foot,
            to_next: None,
            step: 0.0,
        });
    }
    for i in 0..entries.len().saturating_sub(1) {
        if let (Some(x), Some(y)) = (axes[i], axes[i + 1]) {
            entries[i].to_next = complex_distance(&x, &y).ok();
        }
        if let (Some(p), Some(q)) = (entries[i].foot, entries[i + 1].foot) {
            entries[i].step = hyperbolic_distance(&p, &q);
        }
    }
    let total_step = entries.iter().map(|e| e.step).sum();
    let end_to_end = match (
        entries.first().and_then(|e| e.foot),
        entries.last().and_then(|e| e.foot),
    ) {
        (Some(p), Some(q)) => hyperbolic_distance(&p, &q),
        _ => 0.0,
    };
    Ok(ChainReport {
        pair,
        entries,
        terminal: current,
        descending,
        total_step,
        end_to_end,
    })
}

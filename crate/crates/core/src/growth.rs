//! Growth of traces against word length, the Fibonacci function on wakes,
//! and agreement between trace arrows and word-length arrows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods without std
use num_traits::Float;

use num_traits::ToPrimitive;

use crate::bq::{decide_bq, modulus, valued_edges_to_level, BqOutcome, BqParams, ValuedEdge};
use crate::tree::{level, w_arrow, Arrow, EdgeFrame};
use crate::{Error, Fraction, MarkoffTriple, Result, C64};

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GrowthRecord {
    pub fraction: Fraction,
    pub size: f64,
    /// `log max(1, |φ|)`; infinite when the value overflowed.
    pub log_plus: f64,
    pub slope: f64,
    /// Smallest Fibonacci-function value over the wakes containing the region.
    pub fibonacci: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GrowthReport {
    pub depth: usize,
    pub status: String,
    /// False unless the triple was certified; slopes are then only indicative.
    pub certified: bool,
    pub records: Vec<GrowthRecord>,
    /// Regions excluded from the slope fit: `Ω(2)` and its neighbours.
    pub excluded: Vec<Fraction>,
    pub c_minus: f64,
    pub c_plus: f64,
    /// `min log|φ| / F` over wake regions with `F >= 2`.
    pub c_fibonacci: f64,
    /// Wake regions with `log|φ| <= 0`, where no positive constant works.
    pub exceptions: Vec<Fraction>,
}

/// Values of every region up to the given Stern–Brocot level.
pub fn region_values_to_level(t: &MarkoffTriple, depth: usize) -> BTreeMap<Fraction, C64> {
    let mut out = BTreeMap::new();
    for e in valued_edges_to_level(t, depth.max(1)) {
        for (f, v) in e.values() {
            out.entry(f.clone()).or_insert(v);
        }
    }
    out.retain(|f, _| level(f) <= depth);
    out
}

pub fn log_plus(v: C64) -> f64 {
    let m = modulus(v);
    if m.is_infinite() {
        f64::INFINITY
    } else {
        m.max(1.0).ln()
    }
}

pub fn fibonacci_growth_scan(t: &MarkoffTriple, depth: usize, params: &BqParams) -> GrowthReport {
    let outcome = decide_bq(t, params);
    let values = region_values_to_level(t, depth);
    let mut excluded = BTreeSet::new();
    let mut fib: BTreeMap<Fraction, f64> = BTreeMap::new();
    let mut exceptions = BTreeSet::new();
    let mut c_fib = f64::INFINITY;
    if let BqOutcome::Certified(cert) = &outcome {
        let omega2: BTreeSet<Fraction> =
            cert.omega_below(2.0).into_iter().map(|(f, _)| f).collect();
        // neighbours of Ω(2) among the scanned regions
        for f in values.keys() {
            if omega2.contains(f) || omega2.iter().any(|g| g.is_neighbour(f)) {
                excluded.insert(f.clone());
            }
        }
        for r in &cert.frontier {
            for (f, fv) in wake_fibonacci(&r.edge.frame, depth) {
                let slot = fib.entry(f.clone()).or_insert(fv);
                *slot = slot.min(fv);
                if fv >= 2.0 {
                    if let Some(v) = values.get(&f) {
                        let lp = log_plus(*v);
                        if lp <= 0.0 {
                            exceptions.insert(f.clone());
                        } else if lp.is_finite() {
                            c_fib = c_fib.min(lp / fv);
                        }
                    }
                }
            }
        }
    }
    let mut records = Vec::with_capacity(values.len());
    let (mut c_minus, mut c_plus) = (f64::INFINITY, 0.0f64);
    for (f, v) in &values {
        let size = f.size().to_f64().unwrap_or(f64::INFINITY);
        let lp = log_plus(*v);
        let slope = lp / size;
        if lp.is_finite() {
            c_plus = c_plus.max(slope);
            if !excluded.contains(f) {
                c_minus = c_minus.min(slope);
            }
        }
        records.push(GrowthRecord {
            fraction: f.clone(),
            size,
            log_plus: lp,
            slope,
            fibonacci: fib.get(f).copied(),
        });
    }
    let status = match &outcome {
        BqOutcome::Certified(_) => String::from("certified"),
        BqOutcome::Fails { witness, .. } => {
            alloc::format!("fails at {witness}: growth claim not applicable")
        }
        BqOutcome::Inconclusive(_) => String::from("inconclusive: growth claim not established"),
        BqOutcome::Reducible { .. } => String::from("reducible: growth claim not applicable"),
    };
    GrowthReport {
        depth,
        status,
        certified: matches!(outcome, BqOutcome::Certified(_)),
        records,
        excluded: excluded.into_iter().collect(),
        c_minus: if c_minus.is_finite() { c_minus } else { 0.0 },
        c_plus,
        c_fibonacci: if c_fib.is_finite() { c_fib } else { 0.0 },
        exceptions: exceptions.into_iter().collect(),
    }
}

/// Fibonacci function of the wake of `e`: `1` on the two regions adjacent to
/// `e`, and `F(u) + F(v)` on the far region of an edge `(u, v)` in the wake.
/// Only regions up to the given level are returned.
pub fn wake_fibonacci(e: &EdgeFrame, depth: usize) -> Vec<(Fraction, f64)> {
    let mut out = alloc::vec![(e.u.clone(), 1.0), (e.v.clone(), 1.0)];
    let mut stack = alloc::vec![(e.clone(), 1.0f64, 1.0f64)];
    while let Some((edge, fu, fv)) = stack.pop() {
        if level(&edge.far) > depth {
            continue;
        }
        let ff = fu + fv;
        out.push((edge.far.clone(), ff));
        let [c1, c2] = edge.children();
        stack.push((c1, fu, ff));
        stack.push((c2, ff, fv));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArrowReport {
    pub depth: usize,
    pub edges_compared: usize,
    /// Word-length bound beyond which T- and W-arrows agree.
    pub n0: u64,
    /// Decisive edges where the arrows disagree, the base edge included.
    pub disagreements: Vec<EdgeFrame>,
}

pub fn arrow_agreement_scan(
    t: &MarkoffTriple,
    depth: usize,
    params: &BqParams,
) -> Result<ArrowReport> {
    if !matches!(decide_bq(t, params), BqOutcome::Certified(_)) {
        return Err(Error::NotCertified);
    }
    let edges: Vec<ValuedEdge> = valued_edges_to_level(t, depth);
    let mut n0 = 0u64;
    let mut disagreements = Vec::new();
    let mut compared = 0;
    for e in &edges {
        if !e.is_decisive() {
            continue;
        }
        compared += 1;
        let ta: Arrow = e.arrow();
        if ta != w_arrow(&e.frame.near, &e.frame.far) {
            if !e.frame.is_base() {
                let s = e.frame.u.size().max(e.frame.v.size());
                n0 = n0.max(s.to_u64().unwrap_or(u64::MAX));
            }
            disagreements.push(e.frame.clone());
        }
    }
    Ok(ArrowReport {
        depth,
        edges_compared: compared,
        n0,
        disagreements,
    })
}

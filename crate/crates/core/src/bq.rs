//! Semi-decision of the BQ-conditions by a pruned breadth-first search of
//! the trace tree, with a certificate that can be re-checked independently.
//!
//! A frontier edge with adjacent values `α, β`, near value `ν` and far value
//! `γ` is pruned when
//!
//! * `|α| >= 2 + δ`, `|β| >= 2 + δ`, `|γ| >= M`,
//! * `|γ| >= max(|α|, |β|)` and `|γ| > |ν|`.
//!
//! Every region behind such an edge then has modulus at least `(1 + δ)|γ|`:
//! a child far value is `t = αγ − β` with `|t| >= (2 + δ)|γ| − |γ|`, and the
//! child edges satisfy the same rule. So no region beyond `γ` lies below the
//! floor `M`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::markoff::{vertex_residual, ValueMap, VALUE_LIMIT};
use crate::tree::{edge_key, t_arrow, Arrow, EdgeFrame, EdgeKey};
use crate::{Error, Fraction, MarkoffTriple, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BqParams {
    /// Distance to `[−2, 2]` (and to `μ = 4`) regarded as zero.
    pub tol: f64,
    /// Prune margin `δ`: adjacent moduli must reach `2 + δ`.
    pub margin: f64,
    /// Floor `M >= 2 + δ` on all three moduli of a pruned edge.
    pub floor: f64,
    /// Maximum number of edges processed.
    pub max_nodes: usize,
}

impl Default for BqParams {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            margin: 1e-6,
            floor: 2.0 + 1e-6,
            max_nodes: 100_000,
        }
    }
}

impl BqParams {
    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }

    /// Floor actually used: never below `2 + δ`.
    pub fn effective_floor(&self) -> f64 {
        self.floor.max(2.0 + self.margin)
    }
}

/// An edge frame with the values of its four regions.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValuedEdge {
    pub frame: EdgeFrame,
    pub alpha: C64,
    pub beta: C64,
    pub nu: C64,
    pub gamma: C64,
}

impl ValuedEdge {
    fn children(&self) -> [PendingEdge; 2] {
        let [c1, c2] = self.frame.children();
        [
            PendingEdge {
                frame: c1,
                alpha: self.alpha,
                beta: self.gamma,
                nu: self.beta,
            },
            PendingEdge {
                frame: c2,
                alpha: self.gamma,
                beta: self.beta,
                nu: self.alpha,
            },
        ]
    }

    pub fn arrow(&self) -> Arrow {
        t_arrow((&self.frame.near, self.nu), (&self.frame.far, self.gamma))
    }

    /// Strict inequality between the end moduli.
    pub fn is_decisive(&self) -> bool {
        modulus(self.gamma) != modulus(self.nu)
    }

    pub fn values(&self) -> [(&Fraction, C64); 4] {
        let f = &self.frame;
        [
            (&f.u, self.alpha),
            (&f.v, self.beta),
            (&f.near, self.nu),
            (&f.far, self.gamma),
        ]
    }
}

#[derive(Clone, Debug)]
struct PendingEdge {
    frame: EdgeFrame,
    alpha: C64,
    beta: C64,
    nu: C64,
}

/// A pruned edge with the quantities entering the prune rule.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrontierRecord {
    pub edge: ValuedEdge,
    pub abs_alpha: f64,
    pub abs_beta: f64,
    pub abs_gamma: f64,
    /// `min(|α|, |β|) − (2 + δ)`
    pub adjacent_margin: f64,
    /// `|γ| − max(|α|, |β|)`
    pub growth_margin: f64,
    /// `|γ| − M`
    pub floor_margin: f64,
}

impl FrontierRecord {
    fn new(edge: ValuedEdge, params: &BqParams) -> Self {
        let (a, b, g) = (modulus(edge.alpha), modulus(edge.beta), modulus(edge.gamma));
        Self {
            edge,
            abs_alpha: a,
            abs_beta: b,
            abs_gamma: g,
            adjacent_margin: a.min(b) - (2.0 + params.margin),
            growth_margin: g - a.max(b),
            floor_margin: g - params.effective_floor(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Certificate {
    pub params: BqParams,
    pub triple: MarkoffTriple,
    pub mu: C64,
    /// Explored edges in breadth-first order, base edge first.
    pub explored: Vec<ValuedEdge>,
    pub frontier: Vec<FrontierRecord>,
    /// Valued regions with modulus at most the floor, sorted.
    pub omega: Vec<(Fraction, C64)>,
    /// Vertices of the explored tree with all three arrows incoming.
    pub sinks: Vec<[Fraction; 3]>,
}

impl Certificate {
    /// Every region with a recorded value, each once.
    pub fn region_values(&self) -> BTreeMap<Fraction, C64> {
        let mut out = BTreeMap::new();
        for e in self
            .explored
            .iter()
            .chain(self.frontier.iter().map(|r| &r.edge))
        {
            for (f, v) in e.values() {
                out.entry(f.clone()).or_insert(v);
            }
        }
        out
    }

    /// Regions adjacent to some explored edge.
    pub fn core_regions(&self) -> BTreeSet<Fraction> {
        let mut out = BTreeSet::new();
        for e in &self.explored {
            out.insert(e.frame.u.clone());
            out.insert(e.frame.v.clone());
        }
        out
    }

    pub fn nodes(&self) -> usize {
        self.explored.len() + self.frontier.len()
    }

    pub fn omega_below(&self, m: f64) -> Vec<(Fraction, C64)> {
        self.omega
            .iter()
            .filter(|(_, v)| modulus(*v) <= m)
            .cloned()
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FailReason {
    /// A value within tolerance of `[−2, 2]`.
    Trace,
    /// `φ² = μ` up to tolerance: neighbour values tend to zero along a ray.
    DegenerateRay,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchStats {
    pub nodes: usize,
    pub explored: usize,
    pub frontier: usize,
    pub queued: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BqOutcome {
    Certified(alloc::boxed::Box<Certificate>),
    Fails {
        witness: Fraction,
        value: C64,
        reason: FailReason,
        nodes: usize,
    },
    Inconclusive(SearchStats),
    Reducible {
        mu: C64,
    },
}

impl BqOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            BqOutcome::Certified(_) => "certified",
            BqOutcome::Fails { .. } => "fails",
            BqOutcome::Inconclusive(_) => "inconclusive",
            BqOutcome::Reducible { .. } => "reducible",
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            BqOutcome::Certified(c) => c.nodes(),
            BqOutcome::Fails { nodes, .. } => *nodes,
            BqOutcome::Inconclusive(s) => s.nodes,
            BqOutcome::Reducible { .. } => 0,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            BqOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Modulus with overflowed or non-finite values read as `+∞`.
pub fn modulus(v: C64) -> f64 {
    let n = v.norm();
    if n <= VALUE_LIMIT {
        n
    } else {
        f64::INFINITY
    }
}

pub fn near_interval(v: C64, tol: f64) -> bool {
    v.im.abs() <= tol && v.re.abs() <= 2.0 + tol
}

fn fail_reason(v: C64, mu: C64, tol: f64) -> Option<FailReason> {
    if near_interval(v, tol) {
        Some(FailReason::Trace)
    } else if (v * v - mu).norm() <= tol {
        Some(FailReason::DegenerateRay)
    } else {
        None
    }
}

/// Every value in the far wake of such an edge is at least `(1 + δ)|γ|`, so
/// only `|γ|` needs to clear the floor; `α` and `β` stay in the explored part.
pub fn is_prunable(alpha: C64, beta: C64, gamma: C64, nu: C64, params: &BqParams) -> bool {
    let (a, b, g, n) = (modulus(alpha), modulus(beta), modulus(gamma), modulus(nu));
    let two = 2.0 + params.margin;
    g >= params.effective_floor() && a >= two && b >= two && g >= a.max(b) && g > n
}

pub fn decide_bq(t: &MarkoffTriple, params: &BqParams) -> BqOutcome {
    let mu = t.mu();
    if (mu - 4.0).norm() <= params.tol {
        return BqOutcome::Reducible { mu };
    }
    let base = ValuedEdge {
        frame: EdgeFrame::base(),
        alpha: t.x,
        beta: t.y,
        nu: t.flip_z(),
        gamma: t.z,
    };
    for (f, v) in base.values() {
        if let Some(reason) = fail_reason(v, mu, params.tol) {
            return BqOutcome::Fails {
                witness: f.clone(),
                value: v,
                reason,
                nodes: 1,
            };
        }
    }
    let [c1, c2] = base.children();
    let [_, _, f3, f4] = EdgeFrame::base_children();
    let c3 = PendingEdge {
        frame: f3,
        alpha: t.x,
        beta: base.nu,
        nu: t.y,
    };
    let c4 = PendingEdge {
        frame: f4,
        alpha: base.nu,
        beta: t.y,
        nu: t.x,
    };
    let mut queue: VecDeque<PendingEdge> = [c1, c2, c3, c4].into_iter().collect();
    let mut explored = alloc::vec![base];
    let mut frontier = Vec::new();
    let mut nodes = 1;
    while let Some(p) = queue.pop_front() {
        if nodes >= params.max_nodes {
            return BqOutcome::Inconclusive(SearchStats {
                nodes,
                explored: explored.len(),
                frontier: frontier.len(),
                queued: queue.len() + 1,
            });
        }
        nodes += 1;
        let gamma = p.alpha * p.beta - p.nu;
        if let Some(reason) = fail_reason(gamma, mu, params.tol) {
            return BqOutcome::Fails {
                witness: p.frame.far.clone(),
                value: gamma,
                reason,
                nodes,
            };
        }
        let e = ValuedEdge {
            frame: p.frame,
            alpha: p.alpha,
            beta: p.beta,
            nu: p.nu,
            gamma,
        };
        if is_prunable(e.alpha, e.beta, e.gamma, e.nu, params) {
            frontier.push(FrontierRecord::new(e, params));
        } else {
            queue.extend(e.children());
            explored.push(e);
        }
    }
    let mut cert = Certificate {
        params: *params,
        triple: *t,
        mu,
        explored,
        frontier,
        omega: Vec::new(),
        sinks: Vec::new(),
    };
    cert.omega = omega_of(&cert.region_values(), params.effective_floor());
    cert.sinks = sinks_of(&cert);
    BqOutcome::Certified(alloc::boxed::Box::new(cert))
}

fn omega_of(values: &BTreeMap<Fraction, C64>, m: f64) -> Vec<(Fraction, C64)> {
    values
        .iter()
        .filter(|(_, v)| modulus(**v) <= m)
        .map(|(f, v)| (f.clone(), *v))
        .collect()
}

fn edge_index(c: &Certificate) -> BTreeMap<EdgeKey, &ValuedEdge> {
    c.explored
        .iter()
        .chain(c.frontier.iter().map(|r| &r.edge))
        .map(|e| (e.frame.key(), e))
        .collect()
}

/// Sinks among the far vertices of explored edges and the near vertex of the
/// base edge.
fn sinks_of(c: &Certificate) -> Vec<[Fraction; 3]> {
    let index = edge_index(c);
    let mut out = Vec::new();
    let incoming_children = |u: &Fraction, v: &Fraction, w: &Fraction| -> Option<bool> {
        let a = index.get(&edge_key(u, w))?;
        let b = index.get(&edge_key(w, v))?;
        Some(a.arrow() == Arrow::Inward && b.arrow() == Arrow::Inward)
    };
    for e in &c.explored {
        let f = &e.frame;
        if e.arrow() == Arrow::Outward && incoming_children(&f.u, &f.v, &f.far) == Some(true) {
            out.push([f.u.clone(), f.v.clone(), f.far.clone()]);
        }
    }
    if let Some(b) = c.explored.first() {
        let f = &b.frame;
        if b.arrow() == Arrow::Inward && incoming_children(&f.u, &f.v, &f.near) == Some(true) {
            out.push([f.u.clone(), f.v.clone(), f.near.clone()]);
        }
    }
    out
}

/// All regions with `|φ| <= m`, read off a certificate whose floor is at
/// least `m`.
pub fn enumerate_omega(
    t: &MarkoffTriple,
    m: f64,
    params: &BqParams,
) -> Result<Vec<(Fraction, C64)>> {
    let p = params.with_floor(params.floor.max(m));
    match decide_bq(t, &p) {
        BqOutcome::Certified(c) => Ok(c.omega_below(m)),
        _ => Err(Error::NotCertified),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Structure,
    Connectivity,
    PruneViolation,
    RelationViolation,
    Incomplete,
    Orientation,
    ComplexInequality,
    FailsValue,
    OmegaMismatch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edge: Option<Box<EdgeFrame>>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)?;
        if let Some(e) = &self.edge {
            write!(
                f,
                " at edge ({}, {}) near {} far {}",
                e.u, e.v, e.near, e.far
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub explored: usize,
    pub frontier: usize,
    pub regions: usize,
    pub sinks: usize,
    pub max_relation_residual: f64,
    pub min_prune_margin: f64,
    pub min_inequality_margin: f64,
}

fn violation(kind: ViolationKind, edge: Option<&EdgeFrame>, detail: String) -> Violation {
    Violation {
        kind,
        edge: edge.map(|e| Box::new(e.clone())),
        detail,
    }
}

/// Re-checks a certificate from scratch against the triple it claims to
/// certify. Reports the first violated condition.
pub fn validate_certificate(
    c: &Certificate,
    t: &MarkoffTriple,
) -> core::result::Result<Diagnostics, Violation> {
    use ViolationKind::*;
    let p = &c.params;
    if c.triple != *t {
        return Err(violation(
            Structure,
            None,
            "certificate is for a different triple".into(),
        ));
    }
    if !(p.floor >= 2.0 + p.margin) || !(p.margin > 0.0) || !(p.tol >= 0.0) {
        return Err(violation(Structure, None, "invalid parameters".into()));
    }
    // structure and connectivity
    let Some(first) = c.explored.first() else {
        return Err(violation(Structure, None, "no explored edges".into()));
    };
    if first.frame != EdgeFrame::base() {
        return Err(violation(
            Structure,
            Some(&first.frame),
            "first explored edge is not the base edge".into(),
        ));
    }
    let mut seen: BTreeMap<EdgeKey, usize> = BTreeMap::new();
    for (i, e) in c.explored.iter().enumerate() {
        if !e.frame.is_well_formed() {
            return Err(violation(
                Structure,
                Some(&e.frame),
                "malformed edge".into(),
            ));
        }
        if seen.insert(e.frame.key(), i).is_some() {
            return Err(violation(
                Structure,
                Some(&e.frame),
                "duplicate edge".into(),
            ));
        }
        if i > 0 {
            let parent = e.frame.parent_key().expect("non-base edge");
            if seen.get(&parent).is_none_or(|&j| j >= i) {
                return Err(violation(
                    Connectivity,
                    Some(&e.frame),
                    "parent not explored before edge".into(),
                ));
            }
            if !is_child_of(&c.explored[seen[&parent]].frame, &e.frame) {
                return Err(violation(
                    Connectivity,
                    Some(&e.frame),
                    "frame does not match its parent".into(),
                ));
            }
        }
    }
    for r in &c.frontier {
        let e = &r.edge;
        if !e.frame.is_well_formed() || e.frame.is_base() {
            return Err(violation(
                Structure,
                Some(&e.frame),
                "malformed frontier edge".into(),
            ));
        }
        if seen.insert(e.frame.key(), usize::MAX).is_some() {
            return Err(violation(
                Structure,
                Some(&e.frame),
                "duplicate edge".into(),
            ));
        }
        let parent = e.frame.parent_key().expect("non-base edge");
        match seen.get(&parent) {
            Some(&j) if j != usize::MAX && is_child_of(&c.explored[j].frame, &e.frame) => {}
            _ => {
                return Err(violation(
                    Connectivity,
                    Some(&e.frame),
                    "frontier edge not attached to explored tree".into(),
                ))
            }
        }
    }
    // prune rule on the recorded values
    let mut min_prune_margin = f64::INFINITY;
    for r in &c.frontier {
        let e = &r.edge;
        if !is_prunable(e.alpha, e.beta, e.gamma, e.nu, p) {
            return Err(violation(
                PruneViolation,
                Some(&e.frame),
                format!(
                    "|α|={}, |β|={}, |γ|={}, |ν|={}",
                    modulus(e.alpha),
                    modulus(e.beta),
                    modulus(e.gamma),
                    modulus(e.nu)
                ),
            ));
        }
        let recorded = [r.abs_alpha, r.abs_beta, r.abs_gamma];
        let actual = [modulus(e.alpha), modulus(e.beta), modulus(e.gamma)];
        if recorded
            .iter()
            .zip(actual)
            .any(|(a, b)| !close_modulus(*a, b))
        {
            return Err(violation(
                PruneViolation,
                Some(&e.frame),
                "recorded moduli disagree with values".into(),
            ));
        }
        min_prune_margin = min_prune_margin
            .min(r.adjacent_margin)
            .min(r.growth_margin)
            .min(r.floor_margin);
    }
    // values recomputed independently by descent from the base triple
    let mut vm = ValueMap::new(*t);
    let mut max_residual: f64 = 0.0;
    for e in c.explored.iter().chain(c.frontier.iter().map(|r| &r.edge)) {
        for (f, v) in e.values() {
            let expected = vm.value(f);
            let ok = match expected {
                Ok(w) => (v - w).norm() <= 1e-9 * w.norm().max(1.0),
                Err(Error::Overflow(_)) => {
                    modulus(v).is_infinite() || v.norm() > VALUE_LIMIT * 1e-3
                }
                Err(_) => false,
            };
            if !ok {
                return Err(violation(
                    RelationViolation,
                    Some(&e.frame),
                    format!("value at {f} is {v}, expected {expected:?}"),
                ));
            }
        }
        if [e.alpha, e.beta, e.nu, e.gamma]
            .iter()
            .all(|v| modulus(*v).is_finite())
        {
            let scale = 1.0 + (e.alpha * e.beta).norm() + e.nu.norm() + e.gamma.norm();
            let edge_res = (e.gamma + e.nu - e.alpha * e.beta).norm() / scale;
            let vertex_res = vertex_residual(e.alpha, e.beta, e.gamma, c.mu);
            let res = edge_res.max(vertex_res);
            max_residual = max_residual.max(res);
            if res > 1e-9 {
                return Err(violation(
                    RelationViolation,
                    Some(&e.frame),
                    format!("relation residual {res:e}"),
                ));
            }
        }
    }
    if (c.mu - t.mu()).norm() > 1e-9 * (1.0 + t.mu().norm()) {
        return Err(violation(
            RelationViolation,
            None,
            "recorded μ differs from the triple".into(),
        ));
    }
    // completeness: the search tree has no loose ends
    for (i, e) in c.explored.iter().enumerate() {
        let kids: Vec<EdgeFrame> = if i == 0 {
            EdgeFrame::base_children().to_vec()
        } else {
            e.frame.children().to_vec()
        };
        for k in kids {
            if !seen.contains_key(&k.key()) {
                return Err(violation(
                    Incomplete,
                    Some(&e.frame),
                    format!("child ({}, {}) missing", k.u, k.v),
                ));
            }
        }
    }
    // frontier edges and the edges behind them point inward
    for r in &c.frontier {
        let e = &r.edge;
        let t1 = e.alpha * e.gamma - e.beta;
        let t2 = e.gamma * e.beta - e.alpha;
        let inward = modulus(e.gamma) > modulus(e.nu)
            && modulus(t1) > modulus(e.beta)
            && modulus(t2) > modulus(e.alpha);
        if !inward {
            return Err(violation(
                Orientation,
                Some(&e.frame),
                "frontier edge not decisively inward".into(),
            ));
        }
    }
    // Re(z / (u v)) >= 1/2 for the tail value z of decisively oriented edges
    let mut min_ineq = f64::INFINITY;
    for e in c.explored.iter().chain(c.frontier.iter().map(|r| &r.edge)) {
        if !e.is_decisive() {
            continue;
        }
        let tail = if modulus(e.gamma) > modulus(e.nu) {
            e.gamma
        } else {
            e.nu
        };
        let uv = e.alpha * e.beta;
        if uv.norm() == 0.0 || !modulus(uv).is_finite() || !modulus(tail).is_finite() {
            continue;
        }
        let re = (tail / uv).re;
        min_ineq = min_ineq.min(re - 0.5);
        if re < 0.5 - p.tol.max(1e-12) {
            return Err(violation(
                ComplexInequality,
                Some(&e.frame),
                format!("Re(z/(uv)) = {re}"),
            ));
        }
    }
    // no value in [−2, 2]
    let values = c.region_values();
    for (f, v) in &values {
        if fail_reason(*v, c.mu, p.tol).is_some() {
            return Err(violation(
                FailsValue,
                None,
                format!("region {f} has value {v}"),
            ));
        }
    }
    if omega_of(&values, p.effective_floor()) != c.omega {
        return Err(violation(
            OmegaMismatch,
            None,
            "recorded Ω list differs from recomputation".into(),
        ));
    }
    Ok(Diagnostics {
        explored: c.explored.len(),
        frontier: c.frontier.len(),
        regions: values.len(),
        sinks: c.sinks.len(),
        max_relation_residual: max_residual,
        min_prune_margin,
        min_inequality_margin: min_ineq,
    })
}

/// All valued edges whose adjacent regions have Stern–Brocot level below
/// `depth`, base edge first, breadth first. No pruning.
pub fn valued_edges_to_level(t: &MarkoffTriple, depth: usize) -> Vec<ValuedEdge> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    let base = ValuedEdge {
        frame: EdgeFrame::base(),
        alpha: t.x,
        beta: t.y,
        nu: t.flip_z(),
        gamma: t.z,
    };
    let [c1, c2] = base.children();
    let [_, _, f3, f4] = EdgeFrame::base_children();
    let mut pending = alloc::vec![
        c1,
        c2,
        PendingEdge {
            frame: f3,
            alpha: t.x,
            beta: base.nu,
            nu: t.y
        },
        PendingEdge {
            frame: f4,
            alpha: base.nu,
            beta: t.y,
            nu: t.x
        },
    ];
    out.push(base);
    // children of an edge sit exactly one level deeper
    for _ in 1..depth {
        let mut next = Vec::with_capacity(2 * pending.len());
        for p in pending {
            let e = ValuedEdge {
                gamma: p.alpha * p.beta - p.nu,
                frame: p.frame,
                alpha: p.alpha,
                beta: p.beta,
                nu: p.nu,
            };
            next.extend(e.children());
            out.push(e);
        }
        pending = next;
    }
    out
}

fn close_modulus(a: f64, b: f64) -> bool {
    (a.is_infinite() && b.is_infinite()) || (a - b).abs() <= 1e-9 * a.abs().max(1.0)
}

fn is_child_of(parent: &EdgeFrame, child: &EdgeFrame) -> bool {
    let kids: Vec<EdgeFrame> = if parent.is_base() {
        EdgeFrame::base_children().to_vec()
    } else {
        parent.children().to_vec()
    };
    kids.iter().any(|k| k == child)
}

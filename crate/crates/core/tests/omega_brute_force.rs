//! Regions of small value compared against an exhaustive walk of the tree.

use std::collections::BTreeSet;

use bqtool_core::bq::{decide_bq, enumerate_omega, BqOutcome, BqParams};
use bqtool_core::{Fraction, MarkoffTriple, C64};
use num_bigint::BigInt;

// Every region down to `levels` Stern–Brocot levels on both sides, with its
// value, built from scratch by the edge relation at each new mediant.
fn all_regions(t: &MarkoffTriple, levels: usize) -> Vec<(Fraction, C64)> {
    let frac = |p: &BigInt, q: &BigInt| Fraction::new(p.clone(), q.clone()).unwrap();
    let mut out = vec![
        (Fraction::from_ints(0, 1), t.x),
        (Fraction::from_ints(1, 0), t.y),
        (Fraction::from_ints(1, 1), t.z),
        (Fraction::from_ints(-1, 1), t.x * t.y - t.z),
    ];
    // (left, right, opposite) as (p, q, value); the mediant of left and right
    // gets value left·right − opposite
    type Node = ((BigInt, BigInt), C64);
    let mut pending: Vec<(Node, Node, C64)> = Vec::new();
    let n = |p: i64, q: i64, v: C64| ((BigInt::from(p), BigInt::from(q)), v);
    // positive side around 1/1, negative side around −1/1 (with −1/0 for ∞)
    pending.push((n(0, 1, t.x), n(1, 1, t.z), t.y));
    pending.push((n(1, 1, t.z), n(1, 0, t.y), t.x));
    pending.push((n(-1, 0, t.y), n(-1, 1, t.x * t.y - t.z), t.x));
    pending.push((n(-1, 1, t.x * t.y - t.z), n(0, 1, t.x), t.y));
    for _ in 2..=levels {
        let mut next = Vec::new();
        for (l, r, opp) in pending {
            let m = ((&l.0 .0 + &r.0 .0, &l.0 .1 + &r.0 .1), l.1 * r.1 - opp);
            out.push((frac(&m.0 .0, &m.0 .1), m.1));
            next.push((l.clone(), m.clone(), r.1));
            next.push((m, r.clone(), l.1));
        }
        pending = next;
    }
    out
}

fn brute_omega(t: &MarkoffTriple, m: f64) -> BTreeSet<Fraction> {
    all_regions(t, 15)
        .into_iter()
        .filter(|(_, v)| v.norm() <= m)
        .map(|(f, _)| f)
        .collect()
}

#[test]
fn exhaustive_walk_has_expected_size() {
    let t = MarkoffTriple::real(3.0, 3.0, 3.0);
    // 4 regions at levels 0–1, then 2^(k) new regions per level k >= 2
    assert_eq!(
        all_regions(&t, 15).len(),
        4 + (2..=15).map(|k| 1usize << k).sum::<usize>()
    );
}

#[test]
fn omega_matches_exhaustive_walk() {
    for xyz in [(3.0, 3.0, 3.0), (4.0, 4.0, 4.0), (3.0, 3.0, 4.0)] {
        let t = MarkoffTriple::real(xyz.0, xyz.1, xyz.2);
        for m in [2.0, 3.0] {
            let got: BTreeSet<Fraction> = enumerate_omega(&t, m, &BqParams::default())
                .unwrap()
                .into_iter()
                .map(|(f, _)| f)
                .collect();
            assert_eq!(got, brute_omega(&t, m), "{xyz:?} m={m}");
        }
    }
}

#[test]
fn omega_of_complex_triple() {
    let t = MarkoffTriple::new(C64::new(2.5, 0.8), C64::new(2.7, -0.6), C64::new(3.1, 0.2));
    let BqOutcome::Certified(_) = decide_bq(&t, &BqParams::default()) else {
        panic!("expected a certificate")
    };
    for m in [2.0, 3.0, 4.0] {
        let got: BTreeSet<Fraction> = enumerate_omega(&t, m, &BqParams::default())
            .unwrap()
            .into_iter()
            .map(|(f, _)| f)
            .collect();
        assert_eq!(got, brute_omega(&t, m), "m={m}");
    }
}

fn connected(set: &BTreeSet<Fraction>) -> bool {
    let Some(first) = set.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([first.clone()]);
    let mut stack = vec![first.clone()];
    while let Some(f) = stack.pop() {
        for g in set {
            if !seen.contains(g) && f.is_neighbour(g) {
                seen.insert(g.clone());
                stack.push(g.clone());
            }
        }
    }
    seen.len() == set.len()
}

#[test]
fn omega_is_connected() {
    let triples = [
        MarkoffTriple::real(3.0, 3.0, 3.0),
        MarkoffTriple::real(2.2, 3.0, 5.0),
        MarkoffTriple::new(C64::new(2.5, 0.8), C64::new(2.7, -0.6), C64::new(3.1, 0.2)),
        MarkoffTriple::new(C64::new(0.5, 2.0), C64::new(2.5, 0.0), C64::new(3.0, 1.5)),
    ];
    for t in triples {
        if decide_bq(&t, &BqParams::default()).certificate().is_none() {
            continue;
        }
        for m in [2.0, 3.0, 4.0] {
            let set: BTreeSet<Fraction> = enumerate_omega(&t, m, &BqParams::default())
                .unwrap()
                .into_iter()
                .map(|(f, _)| f)
                .collect();
            assert!(connected(&set), "{t:?} m={m}: {set:?}");
        }
    }
}

#[test]
fn pruned_wakes_keep_growing() {
    let params = BqParams::default();
    let t = MarkoffTriple::new(C64::new(2.5, 0.8), C64::new(2.7, -0.6), C64::new(3.1, 0.2));
    let BqOutcome::Certified(c) = decide_bq(&t, &params) else {
        panic!()
    };
    for r in c.frontier.iter().take(100) {
        // (α, β, far γ, near ν) pushed five levels into the wake
        let mut level = vec![(r.edge.alpha, r.edge.beta, r.edge.gamma, r.edge.nu)];
        for _ in 0..5 {
            let mut next = Vec::new();
            for (a, b, g, _) in level {
                for (x, y, near) in [(a, g, b), (g, b, a)] {
                    let far = x * y - near;
                    assert!(
                        far.norm() >= (1.0 + params.margin) * g.norm(),
                        "{far} vs {g}"
                    );
                    assert!(far.norm() > near.norm());
                    next.push((x, y, far, near));
                }
            }
            level = next;
        }
    }
}

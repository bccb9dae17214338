//! Graphviz export of the explored part of a certificate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use bqtool_core::bq::{modulus, Certificate};
use bqtool_core::tree::Arrow;
use bqtool_core::{Fraction, C64};

fn fmt_value(v: C64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else {
        format!("{}{:+}i", v.re, v.im)
    }
}

/// Regions of the explored edges as nodes labelled `p/q: value`, one directed
/// edge per explored tree edge from the region at its tail to the region at
/// its head (T-arrow), and `Ω(2)` drawn double-circled.
pub fn certificate_dot(c: &Certificate) -> String {
    let values = c.region_values();
    let regions: BTreeSet<&Fraction> = c.explored.iter().flat_map(|e| e.frame.regions()).collect();
    let ids: BTreeMap<&Fraction, usize> =
        regions.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut s = String::from("digraph markoff {\n  node [shape=circle];\n");
    for (f, i) in &ids {
        let v = values[*f];
        let shape = if modulus(v) <= 2.0 {
            " shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(s, "  r{i} [label=\"{f}: {}\"{shape}];", fmt_value(v));
    }
    for e in &c.explored {
        let f = &e.frame;
        let (tail, head) = match e.arrow() {
            Arrow::Inward => (&f.far, &f.near),
            Arrow::Outward => (&f.near, &f.far),
        };
        let _ = writeln!(
            s,
            "  r{} -> r{} [label=\"{}|{}\"];",
            ids[tail], ids[head], f.u, f.v
        );
    }
    s.push_str("}\n");
    s
}

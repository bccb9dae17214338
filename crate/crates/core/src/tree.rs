//! Edges of the trivalent tree dual to the Farey tessellation.
//!
//! An edge separates two neighbouring regions `u, v`; its two ends are the
//! vertices shared with the regions `u + v` and `u − v`. Frames are oriented
//! away from the base edge `(0/1, 1/0)`: `near` is the region at the end
//! closer to the base and `far` the one beyond.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Fraction, C64};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeFrame {
    pub u: Fraction,
    pub v: Fraction,
    pub near: Fraction,
    pub far: Fraction,
}

/// Unordered key identifying an edge by its two adjacent regions.
pub type EdgeKey = (Fraction, Fraction);

impl EdgeFrame {
    /// The edge between `0/1` and `1/0`, seen from the `−1/1` end.
    pub fn base() -> Self {
        Self {
            u: Fraction::zero(),
            v: Fraction::infinity(),
            near: Fraction::from_ints(-1, 1),
            far: Fraction::from_ints(1, 1),
        }
    }

    pub fn key(&self) -> EdgeKey {
        edge_key(&self.u, &self.v)
    }

    pub fn is_base(&self) -> bool {
        self.key() == EdgeFrame::base().key()
    }

    /// The two edges leaving the far vertex.
    pub fn children(&self) -> [EdgeFrame; 2] {
        [
            child(&self.u, &self.far, &self.v),
            child(&self.far, &self.v, &self.u),
        ]
    }

    /// Children of the base edge in search order: the two at its far vertex
    /// and the two at its near vertex.
    pub fn base_children() -> [EdgeFrame; 4] {
        let b = EdgeFrame::base();
        let [c1, c2] = b.children();
        let [c3, c4] = [child(&b.u, &b.near, &b.v), child(&b.near, &b.v, &b.u)];
        [c1, c2, c3, c4]
    }

    /// Key of the edge this one hangs from. `None` for the base edge.
    pub fn parent_key(&self) -> Option<EdgeKey> {
        if self.is_base() {
            return None;
        }
        let older = if self.u.size() < self.v.size() {
            &self.u
        } else {
            &self.v
        };
        Some(edge_key(older, &self.near))
    }

    /// Whether all four regions are consistent with a tree edge.
    pub fn is_well_formed(&self) -> bool {
        if !self.u.is_neighbour(&self.v) {
            return false;
        }
        let s = self.u.vec_add(&self.v);
        let d = self.u.vec_sub(&self.v);
        (self.near == s && self.far == d) || (self.near == d && self.far == s)
    }

    pub fn regions(&self) -> [&Fraction; 4] {
        [&self.u, &self.v, &self.near, &self.far]
    }
}

fn child(u: &Fraction, v: &Fraction, near: &Fraction) -> EdgeFrame {
    let s = u.vec_add(v);
    let far = if &s == near { u.vec_sub(v) } else { s };
    EdgeFrame {
        u: u.clone(),
        v: v.clone(),
        near: near.clone(),
        far,
    }
}

pub fn edge_key(u: &Fraction, v: &Fraction) -> EdgeKey {
    if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

/// Stern–Brocot level: `0/1, 1/0` are level 0, `±1/1` level 1, and a
/// mediant is one deeper than its deeper parent.
pub fn level(f: &Fraction) -> usize {
    if f.is_infinite() || num_traits::Zero::is_zero(f.p()) {
        return 0;
    }
    let neg = f.is_negative();
    let (mut l, mut r) = if neg {
        (Fraction::infinity(), Fraction::zero())
    } else {
        (Fraction::zero(), Fraction::infinity())
    };
    let mut depth = 1;
    loop {
        let m = if neg {
            neg_mediant(&l, &r)
        } else {
            l.vec_add(&r)
        };
        if &m == f {
            return depth;
        }
        if f < &m {
            r = m;
        } else {
            l = m;
        }
        depth += 1;
    }
}

/// Stern–Brocot parents `(left, right)` of a fraction, `None` for `0/1` and
/// `1/0`. On the left half `−1/0` is returned as `1/0`.
pub fn parents(f: &Fraction) -> Option<(Fraction, Fraction)> {
    if f.is_infinite() || num_traits::Zero::is_zero(f.p()) {
        return None;
    }
    let neg = f.is_negative();
    let (mut l, mut r) = if neg {
        (Fraction::infinity(), Fraction::zero())
    } else {
        (Fraction::zero(), Fraction::infinity())
    };
    loop {
        let m = if neg {
            neg_mediant(&l, &r)
        } else {
            l.vec_add(&r)
        };
        if &m == f {
            return Some((l, r));
        }
        if f < &m {
            r = m;
        } else {
            l = m;
        }
    }
}

// mediant on the left half, reading a stored 1/0 as −1/0
fn neg_mediant(l: &Fraction, r: &Fraction) -> Fraction {
    if l.is_infinite() {
        Fraction::from_coprime(r.p() - 1, r.q().clone())
    } else {
        l.vec_add(r)
    }
}

/// Direction of the arrow on an edge: which end region it points towards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Arrow {
    /// Points to the near end (towards the base).
    Inward,
    /// Points to the far end.
    Outward,
}

/// T-arrow: points away from the end region of larger modulus; ties go to the
/// end whose region is the smaller fraction.
pub fn t_arrow(near: (&Fraction, C64), far: (&Fraction, C64)) -> Arrow {
    let (an, af) = (near.1.norm(), far.1.norm());
    match af.partial_cmp(&an) {
        Some(Ordering::Greater) => Arrow::Inward,
        Some(Ordering::Less) => Arrow::Outward,
        _ => {
            if near.0 <= far.0 {
                Arrow::Inward
            } else {
                Arrow::Outward
            }
        }
    }
}

/// W-arrow: the same rule applied to word lengths `|p| + q`.
pub fn w_arrow(near: &Fraction, far: &Fraction) -> Arrow {
    match far.size().cmp(&near.size()) {
        Ordering::Greater => Arrow::Inward,
        Ordering::Less => Arrow::Outward,
        Ordering::Equal => {
            if near <= far {
                Arrow::Inward
            } else {
                Arrow::Outward
            }
        }
    }
}

/// All edges whose adjacent regions have level below `depth`, breadth first
/// from the base edge.
pub fn edges_to_level(depth: usize) -> Vec<EdgeFrame> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    let base = EdgeFrame::base();
    out.push(base);
    let mut i = 0;
    let mut pending: Vec<EdgeFrame> = EdgeFrame::base_children().into_iter().collect();
    while !pending.is_empty() {
        let mut next = Vec::new();
        for e in pending {
            if level(&e.u).max(level(&e.v)) < depth {
                next.extend(e.children());
                out.push(e);
            }
        }
        pending = next;
        i += 1;
        debug_assert!(i <= depth + 1);
    }
    out
}

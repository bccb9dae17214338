//! Markoff triples and the trace map on complementary regions of the
//! Farey tree.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Fraction, Result, C64};

/// Moduli above this are treated as overflowed.
pub const VALUE_LIMIT: f64 = 1e300;

/// Traces `(x, y, z)` of `ρ(a), ρ(b), ρ(ab)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MarkoffTriple {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl MarkoffTriple {
    pub fn new(x: C64, y: C64, z: C64) -> Self {
        Self { x, y, z }
    }

    pub fn real(x: f64, y: f64, z: f64) -> Self {
        Self::new(C64::new(x, 0.0), C64::new(y, 0.0), C64::new(z, 0.0))
    }

    /// `x² + y² + z² − xyz`, equal to `Tr[A,B] + 2`.
    pub fn mu(&self) -> C64 {
        mu(self.x, self.y, self.z)
    }

    pub fn is_reducible(&self, tol: f64) -> bool {
        (self.mu() - 4.0).norm() <= tol
    }

    /// Trace of `ab⁻¹`, the value of the region `−1/1`.
    pub fn flip_z(&self) -> C64 {
        edge_flip(self.x, self.y, self.z)
    }
}

pub fn mu(x: C64, y: C64, z: C64) -> C64 {
    x * x + y * y + z * z - x * y * z
}

/// `xy − z`: the value across the edge between regions valued `x` and `y`.
pub fn edge_flip(x: C64, y: C64, z: C64) -> C64 {
    x * y - z
}

/// Residual of the vertex relation, relative to the size of its terms.
pub fn vertex_residual(x: C64, y: C64, z: C64, mu: C64) -> f64 {
    let scale = 1.0 + x.norm_sqr() + y.norm_sqr() + z.norm_sqr() + (x * y * z).norm() + mu.norm();
    (self::mu(x, y, z) - mu).norm() / scale
}

/// Memoized Markoff map determined by a base triple.
#[derive(Clone, Debug)]
pub struct ValueMap {
    base: MarkoffTriple,
    memo: BTreeMap<Fraction, C64>,
}

impl ValueMap {
    pub fn new(base: MarkoffTriple) -> Self {
        Self {
            base,
            memo: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &MarkoffTriple {
        &self.base
    }

    pub fn value(&mut self, f: &Fraction) -> Result<C64> {
        if let Some(v) = self.memo.get(f) {
            return Ok(*v);
        }
        let v = trace_by_descent(&self.base, f)?;
        self.memo.insert(f.clone(), v);
        Ok(v)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Value of the Markoff map at a region.
pub fn trace_of_fraction(vm: &mut ValueMap, f: &Fraction) -> Result<C64> {
    vm.value(f)
}

/// Walks the Stern–Brocot path to `f`, flipping across each edge crossed.
fn trace_by_descent(base: &MarkoffTriple, f: &Fraction) -> Result<C64> {
    if f.is_infinite() {
        return Ok(base.y);
    }
    if f.p().is_zero() {
        return Ok(base.x);
    }
    // (p, q) pairs for the current left, right and mediant
    let (mut l, mut r, mut vl, mut vr, mut vm) = if f.is_negative() {
        (
            (-BigInt::one(), BigInt::zero()),
            (BigInt::zero(), BigInt::one()),
            base.y,
            base.x,
            base.flip_z(),
        )
    } else {
        (
            (BigInt::zero(), BigInt::one()),
            (BigInt::one(), BigInt::zero()),
            base.x,
            base.y,
            base.z,
        )
    };
    let (tp, tq) = (f.p(), f.q());
    loop {
        let mp = &l.0 + &r.0;
        let mq = &l.1 + &r.1;
        // compare t with the mediant: sign of tp·mq − mp·tq
        let s = tp * &mq - &mp * tq;
        if s.is_zero() {
            return Ok(vm);
        }
        if s.is_negative() {
            let next = vl * vm - vr;
            r = (mp, mq);
            vr = vm;
            vm = next;
        } else {
            let next = vm * vr - vl;
            l = (mp, mq);
            vl = vm;
            vm = next;
        }
        if !(vm.norm() <= VALUE_LIMIT) {
            return Err(Error::Overflow(f.clone()));
        }
    }
}

//! Reduced fractions `p/q` of `Q ∪ {∞}` with unbounded numerators.
//!
//! A fraction labels a complementary region of the Farey tree and the
//! extended conjugacy class of primitive elements `[p/q]`. The denominator
//! is kept non-negative and `∞` is stored as `1/0`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    /// Builds `p/q`, reducing and normalizing the sign of the denominator.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroFraction);
        }
        let g = p.gcd(&q);
        Ok(Self::normalized(p / &g, q / g))
    }

    /// Small-integer convenience constructor; panics on `0/0`.
    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(p, q).expect("0/0 is not a fraction")
    }

    /// `p, q` already coprime (for instance a sum of neighbours).
    pub(crate) fn from_coprime(p: BigInt, q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        Self::normalized(p, q)
    }

    fn normalized(mut p: BigInt, mut q: BigInt) -> Self {
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        if q.is_zero() {
            p = BigInt::one();
        }
        Self { p, q }
    }

    pub fn infinity() -> Self {
        Self {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.p.is_negative()
    }

    /// Word length `|p| + q` of every cyclically shortest word in `[p/q]`.
    pub fn size(&self) -> BigInt {
        self.p.abs() + &self.q
    }

    pub fn size_usize(&self) -> Option<usize> {
        self.size().to_usize()
    }

    /// Cross determinant `p·s − q·r`.
    pub fn det(&self, other: &Fraction) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }

    /// Farey neighbours: `|p·s − q·r| = 1`.
    pub fn is_neighbour(&self, other: &Fraction) -> bool {
        self.det(other).abs().is_one()
    }

    /// Farey sum `(p+r)/(q+s)` of two neighbours.
    pub fn farey_sum(&self, other: &Fraction) -> Result<Fraction> {
        if !self.is_neighbour(other) {
            return Err(Error::NotNeighbours(
                Box::new(self.clone()),
                Box::new(other.clone()),
            ));
        }
        Ok(self.vec_add(other))
    }

    /// Vector sum `(p+r, q+s)`, normalized. Only meaningful for neighbours.
    pub(crate) fn vec_add(&self, other: &Fraction) -> Fraction {
        Self::from_coprime(&self.p + &other.p, &self.q + &other.q)
    }

    /// Vector difference `(p−r, q−s)`, normalized. Only meaningful for neighbours.
    pub(crate) fn vec_sub(&self, other: &Fraction) -> Fraction {
        Self::from_coprime(&self.p - &other.p, &self.q - &other.q)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p / q
    }
}

impl Ord for Fraction {
    /// Order by value on the extended line, `1/0` largest.
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.p * &other.q)
            .cmp(&(&other.p * &self.q))
            .then_with(|| {
                // only 1/0 vs 1/0 reaches here with equal cross products and
                // distinct representations cannot occur after normalization
                self.q.cmp(&other.q)
            })
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseFraction(s.to_string());
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Fraction::new(p, q).map_err(|_| bad())
    }
}

impl From<&Fraction> for String {
    fn from(f: &Fraction) -> String {
        f.to_string()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

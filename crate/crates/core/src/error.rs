use alloc::boxed::Box;
use alloc::string::String;

use crate::fraction::Fraction;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    ZeroFraction,
    #[error("cannot parse fraction {0:?}")]
    ParseFraction(String),
    #[error("cannot parse word {0:?}")]
    ParseWord(String),
    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbours(Box<Fraction>, Box<Fraction>),
    #[error("word is not primitive")]
    NotPrimitive,
    #[error("empty word")]
    EmptyWord,
    #[error("{fraction} is not admissible for the pair {pair}")]
    NotAdmissible {
        fraction: Fraction,
        pair: &'static str,
    },
    #[error("no palindromic cyclic shift found for {0}")]
    NoPalindromeFound(Fraction),
    #[error("word length {len} exceeds the cap of {cap} letters")]
    CapExceeded { len: String, cap: usize },
    #[error("reducible representation (mu = {mu_re}{mu_im:+}i)")]
    Reducible { mu_re: f64, mu_im: f64 },
    #[error("trace modulus above 1e300 at {0}")]
    Overflow(Fraction),
    #[error("element has no axis (parabolic or identity)")]
    NoAxis,
    #[error("lines share an endpoint")]
    SharedEndpoint,
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("axes intersect")]
    AxesIntersect,
    #[error("triple is not certified by the BQ search")]
    NotCertified,
}

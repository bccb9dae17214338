//! Words over two abstract generators and their inverses.
//!
//! Generator `0` is printed as `a` (or `x` after rewriting in a basic pair)
//! and generator `1` as `b` (or `y`); inverses are printed in upper case.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter {
        generator: 0,
        inverse: false,
    };
    pub const A_INV: Letter = Letter {
        generator: 0,
        inverse: true,
    };
    pub const B: Letter = Letter {
        generator: 1,
        inverse: false,
    };
    pub const B_INV: Letter = Letter {
        generator: 1,
        inverse: true,
    };

    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn render(self, names: [char; 2]) -> char {
        let c = names[self.generator as usize];
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(l: Letter) -> Self {
        Self {
            letters: alloc::vec![l],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free and cyclic reduction; the result is conjugate to `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let r = self.reduced().letters;
        let (mut i, mut j) = (0, r.len());
        while j - i >= 2 && r[i] == r[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: r[i..j].to_vec(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(f), Some(l)) => self.len() == 1 || *f != l.inv(),
                _ => true,
            }
    }

    /// Cyclically shortest with every occurrence of the first generator
    /// carrying a positive exponent.
    pub fn is_positive(&self) -> bool {
        self.is_cyclically_reduced() && self.letters.iter().all(|l| l.generator != 0 || !l.inverse)
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// Exponent sum of a generator.
    pub fn exponent_sum(&self, generator: u8) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    /// Cyclic shift starting at position `k`.
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Whether `other` is a cyclic permutation of `self` (linear time).
    pub fn is_cyclic_permutation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let hay: Vec<Letter> = other
            .letters
            .iter()
            .chain(other.letters.iter())
            .copied()
            .collect();
        kmp_contains(&hay, &self.letters)
    }

    /// Substitutes each generator by a word.
    pub fn substitute(&self, images: [&Word; 2]) -> Word {
        let inverses = [images[0].inverse(), images[1].inverse()];
        let mut letters = Vec::new();
        for l in &self.letters {
            let w = if l.inverse {
                &inverses[l.generator as usize]
            } else {
                images[l.generator as usize]
            };
            letters.extend_from_slice(&w.letters);
        }
        Word { letters }
    }

    pub fn render(&self, names: [char; 2]) -> String {
        self.letters.iter().map(|l| l.render(names)).collect()
    }

    /// Parses letters `a b x y` (upper case for inverses); `x`/`y` are read
    /// as generators 0/1 as well.
    pub fn parse(s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a' | 'x' => Letter::A,
                'A' | 'X' => Letter::A_INV,
                'b' | 'y' => Letter::B,
                'B' | 'Y' => Letter::B_INV,
                c if c.is_whitespace() || c == '1' => continue,
                _ => return Err(Error::ParseWord(s.to_string())),
            };
            letters.push(l);
        }
        Ok(Word { letters })
    }
}

fn kmp_contains(hay: &[Letter], needle: &[Letter]) -> bool {
    let mut fail = alloc::vec![0usize; needle.len()];
    let mut k = 0;
    for i in 1..needle.len() {
        while k > 0 && needle[i] != needle[k] {
            k = fail[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        fail[i] = k;
    }
    k = 0;
    for &h in hay {
        while k > 0 && h != needle[k] {
            k = fail[k - 1];
        }
        if h == needle[k] {
            k += 1;
            if k == needle.len() {
                return true;
            }
        }
    }
    false
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&self.render(['a', 'b']))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

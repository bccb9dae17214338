//! Primitive elements of the free group on `a, b` indexed by the Farey
//! tessellation: standard words, mod-2 types, basic pairs and palindromic
//! representatives.

use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::word::{Letter, Word};
use crate::{Error, Fraction, Result};

/// Default cap on the number of letters materialized for a word.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Class of a fraction modulo 2, identified with one of `a`, `b`, `ab`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Mod2Type {
    /// `0/1`, the class of `a`.
    A,
    /// `1/0`, the class of `b`.
    B,
    /// `1/1`, the class of `ab`.
    Ab,
}

impl Mod2Type {
    pub fn fraction(self) -> Fraction {
        match self {
            Mod2Type::A => Fraction::from_ints(0, 1),
            Mod2Type::B => Fraction::infinity(),
            Mod2Type::Ab => Fraction::from_ints(1, 1),
        }
    }
}

impl fmt::Display for Mod2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mod2Type::A => "0/1",
            Mod2Type::B => "1/0",
            Mod2Type::Ab => "1/1",
        })
    }
}

/// One of the three basic generator pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BasicPair {
    /// `(a, b)`
    AB,
    /// `(a, ab)`
    AAb,
    /// `(b, ab)`
    BAb,
}

impl BasicPair {
    pub const ALL: [BasicPair; 3] = [BasicPair::AB, BasicPair::AAb, BasicPair::BAb];

    pub fn members(self) -> [Mod2Type; 2] {
        match self {
            BasicPair::AB => [Mod2Type::A, Mod2Type::B],
            BasicPair::AAb => [Mod2Type::A, Mod2Type::Ab],
            BasicPair::BAb => [Mod2Type::B, Mod2Type::Ab],
        }
    }

    pub fn admits(self, t: Mod2Type) -> bool {
        self.members().contains(&t)
    }

    /// The two pairs containing the type.
    pub fn admissible_for(t: Mod2Type) -> [BasicPair; 2] {
        match t {
            Mod2Type::A => [BasicPair::AB, BasicPair::AAb],
            Mod2Type::B => [BasicPair::AB, BasicPair::BAb],
            Mod2Type::Ab => [BasicPair::AAb, BasicPair::BAb],
        }
    }

    /// Letter names used when rendering words in this pair's alphabet.
    pub fn letter_names(self) -> [char; 2] {
        match self {
            BasicPair::AB => ['a', 'b'],
            _ => ['x', 'y'],
        }
    }

    /// Images of the pair generators `x, y` as words in `a, b`.
    pub fn generators(self) -> [Word; 2] {
        let w = |s: &str| Word::parse(s).expect("literal word");
        match self {
            BasicPair::AB => [w("a"), w("b")],
            BasicPair::AAb => [w("a"), w("ab")],
            BasicPair::BAb => [w("b"), w("ab")],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BasicPair::AB => "(a,b)",
            BasicPair::AAb => "(a,ab)",
            BasicPair::BAb => "(b,ab)",
        }
    }
}

impl fmt::Display for BasicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BasicPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ab" | "a-b" | "(a,b)" => Ok(BasicPair::AB),
            "a-ab" | "(a,ab)" => Ok(BasicPair::AAb),
            "b-ab" | "(b,ab)" => Ok(BasicPair::BAb),
            _ => Err(Error::ParseWord(s.to_string())),
        }
    }
}

/// Mediant of two Farey neighbours.
pub fn farey_sum(f1: &Fraction, f2: &Fraction) -> Result<Fraction> {
    f1.farey_sum(f2)
}

pub fn standard_word(f: &Fraction) -> Result<Word> {
    standard_word_capped(f, DEFAULT_WORD_CAP)
}

/// Standard word `w_{p/q}` with `e_b = p`, `e_a = q`, built by Stern–Brocot
/// descent with run-length steps so that deep fractions cost `O(log)` steps.
pub fn standard_word_capped(f: &Fraction, cap: usize) -> Result<Word> {
    let size = f.size();
    if size.to_usize().is_none_or(|n| n > cap) {
        return Err(Error::CapExceeded {
            len: size.to_string(),
            cap,
        });
    }
    if f.is_infinite() {
        return Ok(Word::letter(Letter::B));
    }
    if f.p().is_zero() {
        return Ok(Word::letter(Letter::A));
    }
    let (tp, tq) = (f.p().clone(), f.q().clone());
    let (mut lp, mut lq, mut wl, mut rp, mut rq, mut wr) = if tp.is_negative() {
        (
            -BigInt::one(),
            BigInt::zero(),
            Word::letter(Letter::B_INV),
            BigInt::zero(),
            BigInt::one(),
            Word::letter(Letter::A),
        )
    } else {
        (
            BigInt::zero(),
            BigInt::one(),
            Word::letter(Letter::A),
            BigInt::one(),
            BigInt::zero(),
            Word::letter(Letter::B),
        )
    };
    loop {
        let a = &tp * &lq - &lp * &tq;
        let b = &rp * &tq - &tp * &rq;
        match a.cmp(&b) {
            core::cmp::Ordering::Equal => return Ok(wl.concat(&wr)),
            core::cmp::Ordering::Less => {
                let k = (&b - 1u32) / &a;
                rp += &k * &lp;
                rq += &k * &lq;
                wr = power(&wl, &k).concat(&wr);
            }
            core::cmp::Ordering::Greater => {
                let k = (&a - 1u32) / &b;
                lp += &k * &rp;
                lq += &k * &rq;
                wl = wl.concat(&power(&wr, &k));
            }
        }
    }
}

fn power(w: &Word, k: &BigInt) -> Word {
    // the length cap has already been checked, so k fits
    let k = k.to_usize().expect("exponent bounded by word cap");
    let mut letters = Vec::with_capacity(w.len() * k);
    for _ in 0..k {
        letters.extend_from_slice(w.letters());
    }
    Word::new(letters)
}

/// The class `[p/q]` of a primitive word.
pub fn fraction_of_word(w: &Word) -> Result<Fraction> {
    let c = w.cyclically_reduced();
    if c.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (mut ea, mut eb) = (c.exponent_sum(0), c.exponent_sum(1));
    if ea < 0 || (ea == 0 && eb < 0) {
        ea = -ea;
        eb = -eb;
    }
    if ea.gcd(&eb) != 1 {
        return Err(Error::NotPrimitive);
    }
    let f = Fraction::from_ints(eb, ea);
    if f.size_usize() != Some(c.len()) {
        return Err(Error::NotPrimitive);
    }
    let s = standard_word(&f)?;
    if c.is_cyclic_permutation_of(&s) || c.is_cyclic_permutation_of(&s.inverse()) {
        Ok(f)
    } else {
        Err(Error::NotPrimitive)
    }
}

pub fn mod2_type(f: &Fraction) -> Mod2Type {
    let p_odd = f.p().is_odd();
    let q_odd = f.q().is_odd();
    match (p_odd, q_odd) {
        (false, _) => Mod2Type::A,
        (true, false) => Mod2Type::B,
        (true, true) => Mod2Type::Ab,
    }
}

/// Rewrites a word in `a, b` over the pair's generators `x, y`, cyclically
/// reduced.
pub fn rewrite_in_pair(w: &Word, pair: BasicPair) -> Word {
    let x = Word::letter(Letter::A);
    let y = Word::letter(Letter::B);
    let out = match pair {
        BasicPair::AB => w.clone(),
        BasicPair::AAb => w.substitute([&x, &x.inverse().concat(&y)]),
        BasicPair::BAb => w.substitute([&y.concat(&x.inverse()), &x]),
    };
    out.cyclically_reduced()
}

/// The unique cyclic shift of the rewritten standard word that is a
/// palindrome in the pair's alphabet.
pub fn palindromic_representative(f: &Fraction, pair: BasicPair) -> Result<Word> {
    let t = mod2_type(f);
    if !pair.admits(t) {
        return Err(Error::NotAdmissible {
            fraction: f.clone(),
            pair: pair.label(),
        });
    }
    let u = rewrite_in_pair(&standard_word(f)?, pair);
    let mut found = palindromic_shifts(&u);
    if found.len() != 1 {
        return Err(Error::NoPalindromeFound(f.clone()));
    }
    Ok(found.pop().expect("one palindrome"))
}

/// All distinct cyclic shifts of `w` that are palindromes.
pub fn palindromic_shifts(w: &Word) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for k in 0..w.len().max(1) {
        let r = w.rotated(k);
        if r.is_palindrome() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// All fractions with `|p| + q <= n` and their standard words, in
/// breadth-first Stern–Brocot order.
pub fn enumerate_primitives(n: u64) -> Vec<(Fraction, Word)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let a = Word::letter(Letter::A);
    let b = Word::letter(Letter::B);
    out.push((Fraction::zero(), a.clone()));
    out.push((Fraction::infinity(), b.clone()));
    let bound = BigInt::from(n);
    let neg_inf = Fraction::from_coprime(-BigInt::one(), BigInt::zero());
    let mut queue: VecDeque<(Fraction, Word, Fraction, Word)> = VecDeque::new();
    queue.push_back((Fraction::zero(), a.clone(), Fraction::infinity(), b));
    queue.push_back((neg_inf, Word::letter(Letter::B_INV), Fraction::zero(), a));
    while let Some((l, wl, r, wr)) = queue.pop_front() {
        // the vector sum keeps the sign of -1/0 on the left half
        let mp = l_p(&l) + r.p();
        let mq = l.q() + r.q();
        let m = Fraction::from_coprime(mp, mq);
        if m.size() > bound {
            continue;
        }
        let wm = wl.concat(&wr);
        out.push((m.clone(), wm.clone()));
        queue.push_back((l, wl, m.clone(), wm.clone()));
        queue.push_back((m, wm, r, wr));
    }
    out
}

// -1/0 is stored normalized as 1/0; on the left half its numerator is -1.
fn l_p(l: &Fraction) -> BigInt {
    if l.is_infinite() {
        -BigInt::one()
    } else {
        l.p().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::from_ints(p, q)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn standard_words() {
        assert_eq!(standard_word(&f(0, 1)).unwrap(), w("a"));
        assert_eq!(standard_word(&f(1, 0)).unwrap(), w("b"));
        assert_eq!(standard_word(&f(1, 1)).unwrap(), w("ab"));
        assert_eq!(standard_word(&f(1, 2)).unwrap(), w("aab"));
        assert_eq!(standard_word(&f(2, 1)).unwrap(), w("abb"));
        assert_eq!(standard_word(&f(2, 3)).unwrap(), w("aabab"));
        assert_eq!(standard_word(&f(-1, 1)).unwrap(), w("Ba"));
        assert_eq!(standard_word(&f(-1, 2)).unwrap(), w("Baa"));
    }

    #[test]
    fn word_cap() {
        let e = standard_word_capped(&f(7, 5), 10).unwrap_err();
        assert_eq!(
            e,
            Error::CapExceeded {
                len: "12".into(),
                cap: 10
            }
        );
    }

    #[test]
    fn classes_of_words() {
        assert_eq!(fraction_of_word(&w("aba")).unwrap(), f(1, 2));
        assert_eq!(fraction_of_word(&w("ab")).unwrap(), f(1, 1));
        assert_eq!(fraction_of_word(&w("BA")).unwrap(), f(1, 1));
        assert_eq!(fraction_of_word(&w("bA")).unwrap(), f(-1, 1));
        assert_eq!(fraction_of_word(&w("aabb")), Err(Error::NotPrimitive));
        // right exponents, wrong cyclic word
        assert_eq!(fraction_of_word(&w("abAbab")), Err(Error::NotPrimitive));
        assert_eq!(fraction_of_word(&w("aA")), Err(Error::EmptyWord));
    }

    #[test]
    fn mod2_types() {
        assert_eq!(mod2_type(&f(1, 2)), Mod2Type::B);
        assert_eq!(mod2_type(&f(3, 5)), Mod2Type::Ab);
        assert_eq!(mod2_type(&f(0, 1)), Mod2Type::A);
        assert_eq!(mod2_type(&f(1, 0)), Mod2Type::B);
        assert_eq!(mod2_type(&f(-2, 3)), Mod2Type::A);
    }

    #[test]
    fn rewriting() {
        assert_eq!(rewrite_in_pair(&w("ab"), BasicPair::AAb), w("y"));
        assert_eq!(rewrite_in_pair(&w("aab"), BasicPair::AB), w("aab"));
        assert_eq!(rewrite_in_pair(&w("aab"), BasicPair::AAb), w("xy"));
        assert_eq!(rewrite_in_pair(&w("ab"), BasicPair::BAb), w("y"));
    }

    #[test]
    fn palindromes() {
        assert_eq!(
            palindromic_representative(&f(1, 2), BasicPair::AB).unwrap(),
            w("aba")
        );
        assert!(matches!(
            palindromic_representative(&f(1, 1), BasicPair::AB),
            Err(Error::NotAdmissible { .. })
        ));
        assert_eq!(
            palindromic_representative(&f(1, 1), BasicPair::AAb).unwrap(),
            w("y")
        );
    }

    #[test]
    fn small_enumerations() {
        let e1 = enumerate_primitives(1);
        assert_eq!(e1, vec![(f(0, 1), w("a")), (f(1, 0), w("b"))]);
        let e2 = enumerate_primitives(2);
        assert_eq!(e2.len(), 4);
        assert!(e2.contains(&(f(1, 1), w("ab"))));
        assert!(e2.contains(&(f(-1, 1), w("Ba"))));
        let e3 = enumerate_primitives(3);
        assert!(e3.contains(&(f(1, 2), w("aab"))));
        assert!(e3.contains(&(f(2, 1), w("abb"))));
    }

    fn totient(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=30u64 {
            let all = enumerate_primitives(n);
            let positive = all.iter().filter(|(g, _)| !g.is_negative()).count() as u64;
            let expected = 2 + (2..=n).map(totient).sum::<u64>();
            assert_eq!(positive, expected, "n = {n}");
            for (g, word) in &all {
                assert_eq!(standard_word(g).unwrap(), *word);
            }
        }
    }

    /// Brute-force oracle: search conjugators of length at most 4 for a
    /// palindromic conjugate of `u`.
    fn palindromes_by_conjugation(u: &Word) -> Vec<Word> {
        let letters = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];
        let mut conjugators = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for c in &frontier {
                for &l in &letters {
                    let d = c.concat(&Word::letter(l)).reduced();
                    if d.len() == c.len() + 1 {
                        next.push(d);
                    }
                }
            }
            conjugators.extend(next.iter().cloned());
            frontier = next;
        }
        let mut out: Vec<Word> = Vec::new();
        for c in &conjugators {
            let v = c.concat(u).concat(&c.inverse()).reduced();
            if v.len() == u.len() && v.is_palindrome() && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn palindromes_agree_with_conjugator_search() {
        for (g, _) in enumerate_primitives(9) {
            if g.is_negative() {
                continue;
            }
            for pair in BasicPair::admissible_for(mod2_type(&g)) {
                let u = rewrite_in_pair(&standard_word(&g).unwrap(), pair);
                let p = palindromic_representative(&g, pair).unwrap();
                let brute = palindromes_by_conjugation(&u);
                assert_eq!(brute, vec![p], "{g} in {pair}");
            }
        }
    }

    #[test]
    fn unique_palindromic_shift_up_to_34() {
        for (g, _) in enumerate_primitives(34) {
            if g.is_negative() {
                continue;
            }
            for pair in BasicPair::admissible_for(mod2_type(&g)) {
                let u = rewrite_in_pair(&standard_word(&g).unwrap(), pair);
                let shifts = palindromic_shifts(&u);
                assert_eq!(shifts.len(), 1, "{g} in {pair}");
                assert_eq!(shifts[0].len() % 2, 1);
            }
        }
    }

    #[test]
    fn deep_fraction_words_are_fast() {
        // Fibonacci ratio far down the tree
        let (mut p, mut q) = (BigInt::one(), BigInt::one());
        for _ in 0..25 {
            let t = &p + &q;
            q = p;
            p = t;
        }
        let g = Fraction::new(p, q).unwrap();
        let word = standard_word(&g).unwrap();
        assert_eq!(Some(word.len()), g.size_usize());
        assert_eq!(fraction_of_word(&word).unwrap(), g);
    }

    fn arb_fraction(max: i64) -> impl Strategy<Value = Fraction> {
        (-max..=max, 0..=max).prop_filter_map("reduced, nonzero", move |(p, q)| {
            if (p == 0 && q == 0) || p.gcd(&q) != 1 || p.abs() + q > max {
                None
            } else {
                Some(Fraction::from_ints(p, q))
            }
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_fraction(34)) {
            let word = standard_word(&g).unwrap();
            prop_assert_eq!(Some(word.len()), g.size_usize());
            prop_assert!(word.is_positive());
            prop_assert_eq!(fraction_of_word(&word).unwrap(), g.clone());
            let k = word.len() / 2;
            prop_assert_eq!(fraction_of_word(&word.rotated(k).inverse()).unwrap(), g);
        }

        #[test]
        fn exponent_parity_matches_type(g in arb_fraction(60)) {
            let word = standard_word(&g).unwrap();
            let t = mod2_type(&Fraction::from_ints(word.exponent_sum(1).rem_euclid(2), word.exponent_sum(0).rem_euclid(2)));
            prop_assert_eq!(t, mod2_type(&g));
        }

        #[test]
        fn neighbour_words_concatenate(g in arb_fraction(40)) {
            // every fraction other than 0/1, 1/0 is a mediant of its Stern–Brocot parents
            prop_assume!(!g.is_negative() && !g.p().is_zero() && !g.is_infinite());
            let (l, r) = parents(&g);
            let (wl, wr) = (standard_word(&l).unwrap(), standard_word(&r).unwrap());
            let wg = standard_word(&g).unwrap();
            prop_assert_eq!(wg.len(), wl.len() + wr.len());
            prop_assert_eq!(wl.concat(&wr), wg);
        }

        #[test]
        fn rewriting_reexpands_to_a_conjugate(g in arb_fraction(30), which in 0usize..3) {
            let pair = BasicPair::ALL[which];
            let word = standard_word(&g).unwrap();
            let u = rewrite_in_pair(&word, pair);
            let [x, y] = pair.generators();
            let back = u.substitute([&x, &y]).cyclically_reduced();
            prop_assert!(back.is_cyclic_permutation_of(&word.cyclically_reduced()));
        }
    }

    fn parents(g: &Fraction) -> (Fraction, Fraction) {
        let (mut l, mut r) = (Fraction::zero(), Fraction::infinity());
        loop {
            let m = l.vec_add(&r);
            if &m == g {
                return (l, r);
            }
            if g < &m {
                r = m;
            } else {
                l = m;
            }
        }
    }
}

//! Normal ordering of words in `a` and `a†` under `[a, a†] = 1`.
//!
//! Words are stored in algebraic order: the leftmost letter is applied last
//! to a state. The rewrite engine folds the word left to right, keeping the
//! processed prefix in normal order; each new block of creation operators is
//! pushed through the annihilation block at the end of every prefix monomial
//! with [`apply_crossing`]. A single-letter rewriting mode is kept as an
//! independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{binomial, falling_factorial_u};
use crate::error::{Error, Result};
use crate::types::StringType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `a†`
    Creation,
    /// `a`
    Annihilation,
}

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::Creation => "ad",
            Letter::Annihilation => "a",
        }
    }
}

/// A finite word over `{a†, a}`; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BosonWord {
    letters: Vec<Letter>,
}

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord { letters }
    }

    pub fn identity() -> Self {
        BosonWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `#a† − #a`.
    pub fn excess(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Creation => 1,
                Letter::Annihilation => -1,
            })
            .sum()
    }

    /// Appends `count` copies of `letter` on the right.
    pub fn push_power(&mut self, letter: Letter, count: usize) {
        self.letters.extend(std::iter::repeat_n(letter, count));
    }

    /// Maximal runs of equal letters, left to right.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.letters {
            match out.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    /// The product `self · other`.
    pub fn concat(&self, other: &BosonWord) -> BosonWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BosonWord { letters }
    }
}

impl fmt::Display for BosonWord {
    /// Prints runs as `ad^3 a^2 ad a`; the empty word prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, n)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(letter.symbol())?;
            if n > 1 {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

/// A normally ordered operator with a single excess `d`.
///
/// `coeffs[k]` multiplies `(a†)^{k + max(d,0)} a^{k + max(−d,0)}`; only
/// strictly positive coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    excess: i64,
    coeffs: BTreeMap<usize, BigUint>,
}

impl NormalForm {
    pub fn excess(&self) -> i64 {
        self.excess
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigUint> {
        &self.coeffs
    }

    /// Monomials as `(creation degree, annihilation degree, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigUint)> + '_ {
        let (dc, da) = self.offsets();
        self.coeffs
            .iter()
            .map(move |(&k, c)| (k as u64 + dc, k as u64 + da, c))
    }

    fn offsets(&self) -> (u64, u64) {
        (self.excess.max(0) as u64, (-self.excess).max(0) as u64)
    }

    fn to_poly(&self) -> Poly {
        Poly(self.terms().map(|(c, a, v)| ((c, a), v.clone())).collect())
    }

    /// Human-readable form such as `ad^2 a^2 + 4 ad a + 2`.
    pub fn to_operator_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (c, a, v) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mut word = BosonWord::identity();
            word.push_power(Letter::Creation, c as usize);
            word.push_power(Letter::Annihilation, a as usize);
            let mono = word.to_string();
            parts.push(match (v.is_one(), mono.is_empty()) {
                (_, true) => v.to_string(),
                (true, false) => mono,
                (false, false) => format!("{v} {mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl Mul for &NormalForm {
    type Output = NormalForm;

    /// Product of two normal forms, re-ordered.
    fn mul(self, rhs: &NormalForm) -> NormalForm {
        let lhs = self.to_poly();
        let rhs_poly = rhs.to_poly();
        let mut out = Poly::default();
        for (&(i, j), c1) in &lhs.0 {
            for (&(k, l), c2) in &rhs_poly.0 {
                for (p, w) in apply_crossing(j as usize, k as usize) {
                    let p = p as u64;
                    out.add((i + k - p, j - p + l), c1 * c2 * w);
                }
            }
        }
        out.into_normal_form(self.excess + rhs.excess)
    }
}

/// Working polynomial keyed by `(creation degree, annihilation degree)`.
#[derive(Debug, Default)]
struct Poly(BTreeMap<(u64, u64), BigUint>);

impl Poly {
    fn one() -> Self {
        Poly(BTreeMap::from([((0, 0), BigUint::one())]))
    }

    fn add(&mut self, key: (u64, u64), value: BigUint) {
        if value.is_zero() {
            return;
        }
        *self.0.entry(key).or_insert_with(BigUint::zero) += value;
    }

    fn into_normal_form(self, excess: i64) -> NormalForm {
        let shift = excess.max(0) as u64;
        let coeffs = self
            .0
            .into_iter()
            .map(|((c, a), v)| {
                debug_assert_eq!(c as i64 - a as i64, excess, "excess not conserved");
                ((c - shift) as usize, v)
            })
            .collect();
        NormalForm { excess, coeffs }
    }
}

/// How [`normal_order_with`] resolves `a a†` boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewriteStrategy {
    /// Whole blocks `a^k (a†)^l` at once.
    #[default]
    BlockCrossing,
    /// One `a a† → a† a + 1` step at a time. Exponential; oracle use only.
    SingleLetter,
}

/// Expansion of `a^k (a†)^l` as `Σ_p C(k,p) (l)_p (a†)^{l−p} a^{k−p}`,
/// returned as `(p, coefficient)` for `p = 0..=min(k, l)`.
pub fn apply_crossing(k: usize, l: usize) -> Vec<(usize, BigUint)> {
    (0..=k.min(l))
        .map(|p| {
            let c = binomial(k as u64, p as u64) * falling_factorial_u(l as u64, p as u64);
            (p, c)
        })
        .collect()
}

pub fn normal_order(word: &BosonWord) -> NormalForm {
    normal_order_with(word, RewriteStrategy::BlockCrossing)
}

pub fn normal_order_with(word: &BosonWord, strategy: RewriteStrategy) -> NormalForm {
    match strategy {
        RewriteStrategy::BlockCrossing => block_normal_order(word),
        RewriteStrategy::SingleLetter => single_letter_normal_order(word),
    }
}

fn block_normal_order(word: &BosonWord) -> NormalForm {
    let mut poly = Poly::one();
    for (letter, n) in word.runs() {
        let mut next = Poly::default();
        match letter {
            Letter::Annihilation => {
                for ((c, a), v) in poly.0 {
                    next.add((c, a + n as u64), v);
                }
            }
            Letter::Creation => {
                for ((c, a), v) in poly.0 {
                    for (p, w) in apply_crossing(a as usize, n) {
                        let p = p as u64;
                        next.add((c + n as u64 - p, a - p), &v * w);
                    }
                }
            }
        }
        poly = next;
    }
    poly.into_normal_form(word.excess())
}

fn single_letter_normal_order(word: &BosonWord) -> NormalForm {
    let mut pending: HashMap<Vec<Letter>, BigUint> =
        HashMap::from([(word.letters.clone(), BigUint::one())]);
    let mut done = Poly::default();
    while !pending.is_empty() {
        let mut next: HashMap<Vec<Letter>, BigUint> = HashMap::new();
        for (letters, coeff) in pending {
            let boundary = letters
                .windows(2)
                .position(|w| w == [Letter::Annihilation, Letter::Creation]);
            match boundary {
                None => {
                    let c = letters.iter().filter(|&&l| l == Letter::Creation).count();
                    done.add((c as u64, (letters.len() - c) as u64), coeff);
                }
                Some(i) => {
                    let mut swapped = letters.clone();
                    swapped.swap(i, i + 1);
                    let mut dropped = letters;
                    dropped.drain(i..i + 2);
                    *next.entry(swapped).or_insert_with(BigUint::zero) += &coeff;
                    *next.entry(dropped).or_insert_with(BigUint::zero) += coeff;
                }
            }
        }
        pending = next;
    }
    done.into_normal_form(word.excess())
}

/// The word `(a†)^{r_n} a^{s_n} ⋯ (a†)^{r_1} a^{s_1}`; factor 1 is rightmost.
pub fn word_from_type(t: &StringType) -> BosonWord {
    let mut word = BosonWord::identity();
    for (&r, &s) in t.r().iter().zip(t.s()).rev() {
        word.push_power(Letter::Creation, r as usize);
        word.push_power(Letter::Annihilation, s as usize);
    }
    word
}

/// Reads off `d_n` and the table `k ↦ S(k)` from a normal form with
/// nonnegative excess.
pub fn extract_stirling(nf: &NormalForm) -> Result<(i64, BTreeMap<usize, BigUint>)> {
    if nf.excess < 0 {
        return Err(Error::NegativeExcess(nf.excess));
    }
    Ok((nf.excess, nf.coeffs.clone()))
}

/// Acts with `X^{r_n} D^{s_n} ⋯ X^{r_1} D^{s_1}` on `x^m`, returning the
/// coefficient and exponent of the resulting monomial.
///
/// The coefficient equals `∏_j (m + d_{j−1})_{s_j}`; the exponent is
/// `m + d_n`.
pub fn xd_action_on_monomial(t: &StringType, m: u64) -> Result<(BigUint, u64)> {
    t.require_nonnegative_prefix()?;
    let mut coeff = BigUint::one();
    let mut exponent = m;
    for (&r, &s) in t.r().iter().zip(t.s()) {
        // D^s x^e = (e)_s x^{e−s}
        coeff *= falling_factorial_u(exponent, u64::from(s));
        if coeff.is_zero() {
            break;
        }
        exponent = exponent - u64::from(s) + u64::from(r);
    }
    let final_exponent = (m as i64 + t.excess()) as u64;
    Ok((coeff, final_exponent))
}

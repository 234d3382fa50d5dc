use std::fmt;

use crate::error::{Error, Result};

/// The pair of sequences `(r, s)` describing a boson string
/// `(a†)^{r_n} a^{s_n} ⋯ (a†)^{r_1} a^{s_1}`.
///
/// Index 1 is the rightmost factor of the string, i.e. the first bug of the
/// colony. Prefix excesses `d_j = Σ_{i≤j} (r_i − s_i)` are cached at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringType {
    r: Vec<u32>,
    s: Vec<u32>,
    prefix: Vec<i64>,
}

impl StringType {
    pub fn new(r: Vec<u32>, s: Vec<u32>) -> Result<Self> {
        if r.len() != s.len() {
            return Err(Error::LengthMismatch {
                r: r.len(),
                s: s.len(),
            });
        }
        if r.is_empty() {
            return Err(Error::InvalidType("at least one factor is required".into()));
        }
        if let Some(pos) = r.iter().chain(&s).position(|&v| v == 0) {
            return Err(Error::InvalidType(format!(
                "entry {} is zero; all entries must be positive",
                pos % r.len() + 1
            )));
        }
        let mut prefix = Vec::with_capacity(r.len() + 1);
        prefix.push(0i64);
        for (&ri, &si) in r.iter().zip(&s) {
            let last = *prefix.last().unwrap();
            prefix.push(last + i64::from(ri) - i64::from(si));
        }
        Ok(StringType { r, s, prefix })
    }

    /// The uniform type `(r, s)^n`.
    pub fn uniform(r: u32, s: u32, n: usize) -> Result<Self> {
        StringType::new(vec![r; n], vec![s; n])
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    /// Number of factors `n`.
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Prefix excesses `d_0, …, d_n` with `d_0 = 0`.
    pub fn prefix_excesses(&self) -> &[i64] {
        &self.prefix
    }

    /// Total excess `d_n`.
    pub fn excess(&self) -> i64 {
        self.prefix[self.r.len()]
    }

    pub fn first_s(&self) -> usize {
        self.s[0] as usize
    }

    pub fn total_s(&self) -> usize {
        self.s.iter().map(|&v| v as usize).sum()
    }

    pub fn total_r(&self) -> usize {
        self.r.iter().map(|&v| v as usize).sum()
    }

    /// Fails with `NonCanonicalPrefix` on the first negative prefix excess.
    pub fn require_nonnegative_prefix(&self) -> Result<()> {
        match self.prefix.iter().position(|&d| d < 0) {
            Some(index) => Err(Error::NonCanonicalPrefix {
                index,
                value: self.prefix[index],
            }),
            None => Ok(()),
        }
    }

    pub fn has_nonnegative_prefix(&self) -> bool {
        self.prefix.iter().all(|&d| d >= 0)
    }

    /// Appends one factor `(r_next, s_next)` as the new leftmost factor.
    pub fn extended(&self, r_next: u32, s_next: u32) -> Result<Self> {
        let mut r = self.r.clone();
        let mut s = self.s.clone();
        r.push(r_next);
        s.push(s_next);
        StringType::new(r, s)
    }
}

impl fmt::Display for StringType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({};{})", join(&self.r), join(&self.s))
    }
}

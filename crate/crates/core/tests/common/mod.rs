//! Independent reference computations shared by the integration tests.
//! Nothing here calls the library's recurrences or enumerators.
#![allow(dead_code)]

use std::collections::BTreeMap;

use boson_order::algebra::{BosonWord, Letter};
use boson_order::StringType;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Every type with `n ≤ 3`, entries in `{1,2,3}` and nonnegative prefix
/// excesses.
pub fn sweep_types() -> Vec<StringType> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<u32>, Vec<u32>, i64)> = vec![(vec![], vec![], 0)];
    while let Some((r, s, d)) = stack.pop() {
        if !r.is_empty() {
            out.push(StringType::new(r.clone(), s.clone()).unwrap());
        }
        if r.len() == 3 {
            continue;
        }
        for ri in 1..=3u32 {
            for si in 1..=3u32 {
                let excess = d + i64::from(ri) - i64::from(si);
                if excess >= 0 {
                    let mut r2 = r.clone();
                    let mut s2 = s.clone();
                    r2.push(ri);
                    s2.push(si);
                    stack.push((r2, s2, excess));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a.r(), a.s()).cmp(&(b.len(), b.r(), b.s())));
    out
}

/// `l (l−1) ⋯ (l−p+1)` by direct multiplication.
pub fn falling(l: i64, p: u64) -> BigInt {
    (0..p as i64).map(|i| BigInt::from(l - i)).product()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Coefficient `W(m)` with `word · x^m = W(m) x^{m+d}`, where `a` acts as
/// `d/dx` and `a†` as multiplication by `x`, applied right to left.
pub fn word_on_monomial(word: &BosonWord, m: u64) -> BigInt {
    let mut coeff = BigInt::one();
    let mut power = m as i64;
    for letter in word.letters().iter().rev() {
        match letter {
            Letter::Creation => power += 1,
            Letter::Annihilation => {
                coeff *= power;
                power -= 1;
                if coeff.is_zero() {
                    return coeff;
                }
            }
        }
    }
    coeff
}

/// Stirling table of a word with nonnegative excess, from finite differences
/// of its action on monomials: `S(k) = Δ^k W(0) / k!`.
pub fn stirling_by_differences(word: &BosonWord, max_k: usize) -> BTreeMap<usize, BigUint> {
    let values: Vec<BigInt> = (0..=max_k as u64)
        .map(|m| word_on_monomial(word, m))
        .collect();
    let mut out = BTreeMap::new();
    for k in 0..=max_k {
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        for (j, value) in values.iter().enumerate().take(k + 1) {
            let term = &binom * value;
            if (k - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        let fact = BigInt::from(factorial(k as u64));
        assert!((&acc % &fact).is_zero());
        let v = acc / fact;
        if !v.is_zero() {
            out.insert(k, v.to_biguint().expect("nonnegative"));
        }
    }
    out
}

/// Word `(ad^{r_n} a^{s_n}) ⋯ (ad^{r_1} a^{s_1})` built letter by letter.
pub fn word_of(t: &StringType) -> BosonWord {
    let mut letters = Vec::new();
    for i in (0..t.len()).rev() {
        letters.extend(std::iter::repeat_n(Letter::Creation, t.r()[i] as usize));
        letters.extend(std::iter::repeat_n(Letter::Annihilation, t.s()[i] as usize));
    }
    BosonWord::new(letters)
}

/// `∏_j (m + d_{j−1})_{s_j}` with `d_0 = 0`.
pub fn settlement_product(t: &StringType, m: u64) -> BigInt {
    let mut d = 0i64;
    let mut acc = BigInt::one();
    for (r, s) in t.r().iter().zip(t.s()) {
        acc *= falling(m as i64 + d, u64::from(*s));
        d += i64::from(*r) - i64::from(*s);
    }
    acc
}

/// Classical `S(n,k)` from `S(n+1,k) = S(n,k−1) + k S(n,k)`, rows `0..=n`.
pub fn classical_triangle(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for i in 0..n {
        let prev = &rows[i];
        let mut row = vec![BigUint::zero(); i + 2];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let left = prev.get(k - 1).cloned().unwrap_or_default();
            let stay = prev.get(k).cloned().unwrap_or_default() * BigUint::from(k);
            *slot = left + stay;
        }
        rows.push(row);
    }
    rows
}

/// Ordinary coefficients of `(1 − (r−1)x)^{1/(1−r)}` by the generalized
/// binomial theorem, as `(numerator, denominator)` integer pairs.
pub fn tree_closed_form(r: u32, order: usize) -> Vec<(BigInt, BigInt)> {
    // [x^n] = ∏_{i<n} (1 + i(r−1)) / n!
    (0..=order)
        .map(|n| {
            let num: BigInt = (0..n as i64)
                .map(|i| BigInt::from(1 + i * (i64::from(r) - 1)))
                .product();
            (num, BigInt::from(factorial(n as u64)))
        })
        .collect()
}

//! Generalized Stirling and Bell numbers of a string type.
//!
//! Several independent routes are provided so they can be checked against
//! each other: the one-factor-at-a-time recurrence, the alternating closed
//! form, the Bell polynomial operator recursion and the Dobiński-type series.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, exp_rational, factorial, falling_factorial_u, Decimal};
use crate::error::{Error, Result};
use crate::types::StringType;

pub use crate::arith::falling_factorial;

/// Default cap on the number of series terms before giving up.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// `S_{r,s}(k)` for one string type, keyed by the number of free legs `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    pub ty: StringType,
    pub values: BTreeMap<usize, BigUint>,
}

impl StirlingTable {
    pub fn get(&self, k: usize) -> BigUint {
        self.values.get(&k).cloned().unwrap_or_default()
    }

    pub fn bell(&self) -> BigUint {
        self.values.values().sum()
    }
}

/// Dense coefficient vector of `B_{r,s}(x) = Σ_k S(k) x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPolynomial {
    pub coeffs: Vec<BigUint>,
}

impl BellPolynomial {
    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = BigUint::one();
        BellPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn lowest_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(BigInt::from(c.clone()))
            })
    }

    pub fn eval_complex(&self, z: &Complex<BigRational>) -> Complex<BigRational> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, c| {
            let c = BigRational::from_integer(BigInt::from(c.clone()));
            acc * z + Complex::new(c, BigRational::zero())
        })
    }

    fn trimmed(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BellPolynomial { coeffs }
    }
}

/// Numeric result of a series evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    pub value: Decimal,
    pub precision_digits: u32,
    pub terms_used: usize,
}

/// Table of `S_{r,s}(k)` built one factor at a time:
/// `S'(k) = Σ_j C(s',j) (d_n + k − j)_{s'−j} S(k − j)`.
///
/// Needs no sign condition on the prefix excesses.
pub fn stirling_recurrence(t: &StringType) -> StirlingTable {
    let mut values: BTreeMap<usize, BigInt> = BTreeMap::from([(t.first_s(), BigInt::one())]);
    let prefix = t.prefix_excesses();
    for (idx, &s_next) in t.s().iter().enumerate().skip(1) {
        let d = prefix[idx];
        let s_next = u64::from(s_next);
        let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&kp, v) in &values {
            for j in 0..=s_next {
                // with k = kp + j the falling-factorial base d + k − j is d + kp
                let ff = falling_factorial(d + kp as i64, s_next - j);
                if ff.is_zero() {
                    continue;
                }
                let term = BigInt::from(binomial(s_next, j)) * ff * v;
                *next.entry(kp + j as usize).or_insert_with(BigInt::zero) += term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        values = next;
    }
    let values = values
        .into_iter()
        .map(|(k, v)| {
            let v = v
                .to_biguint()
                .expect("colony counts are nonnegative; recurrence produced a negative value");
            (k, v)
        })
        .collect();
    StirlingTable {
        ty: t.clone(),
        values,
    }
}

/// `S(k) = (1/k!) Σ_{m=0}^{k} C(k,m) (−1)^{k−m} ∏_j (m + d_{j−1})_{s_j}`.
pub fn stirling_closed_form(t: &StringType, k: usize) -> Result<BigUint> {
    t.require_nonnegative_prefix()?;
    let (lo, hi) = (t.first_s(), t.total_s());
    if k < lo || k > hi {
        return Err(Error::OutOfRange { k, lo, hi });
    }
    let mut sum = BigInt::zero();
    for m in 0..=k as u64 {
        let term = BigInt::from(binomial(k as u64, m)) * settlement_product(t, m);
        if (k as u64 - m).is_odd() {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let kf = BigInt::from(factorial(k as u64));
    let (q, rem) = sum.div_rem(&kf);
    assert!(
        rem.is_zero(),
        "alternating sum for {t} at k={k} not divisible by k!"
    );
    Ok(q.to_biguint()
        .expect("closed form produced a negative Stirling number"))
}

/// `B_{r,s} = Σ_k S_{r,s}(k)`.
pub fn bell_number(t: &StringType) -> BigUint {
    stirling_recurrence(t).bell()
}

pub fn bell_polynomial(t: &StringType) -> BellPolynomial {
    let table = stirling_recurrence(t);
    let mut coeffs = vec![BigUint::zero(); t.total_s() + 1];
    for (k, v) in table.values {
        coeffs[k] = v;
    }
    BellPolynomial::trimmed(coeffs)
}

/// Extends `B_{r,s}` by one factor: `X^{s'−d}(D+I)^{s'}X^{d} B_{r,s}(x)`.
///
/// `d_prev` is the excess of the type behind `prev`. The polynomial does
/// not depend on `r_next`, which only enters the next step's excess.
pub fn bell_poly_recursion(
    prev: &BellPolynomial,
    d_prev: i64,
    r_next: u32,
    s_next: u32,
) -> Result<BellPolynomial> {
    if d_prev < 0 {
        return Err(Error::NonCanonicalPrefix {
            index: 0,
            value: d_prev,
        });
    }
    if r_next == 0 || s_next == 0 {
        return Err(Error::InvalidType(
            "factor exponents must be positive".into(),
        ));
    }
    let d = d_prev as usize;
    let s = u64::from(s_next);

    // X^d
    let mut shifted = vec![BigUint::zero(); d];
    shifted.extend(prev.coeffs.iter().cloned());

    // (D + I)^s = Σ_j C(s, j) D^j
    let mut applied = vec![BigUint::zero(); shifted.len()];
    for (e, c) in shifted.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for j in 0..=s.min(e as u64) {
            let w = binomial(s, j) * falling_factorial_u(e as u64, j);
            applied[e - j as usize] += c * w;
        }
    }

    // X^{s − d}
    let coeffs = shift_powers(applied, s as i64 - d as i64)?;
    Ok(BellPolynomial::trimmed(coeffs))
}

/// Multiplies by `x^shift`, refusing to drop nonzero coefficients.
fn shift_powers(coeffs: Vec<BigUint>, shift: i64) -> Result<Vec<BigUint>> {
    if shift >= 0 {
        let mut out = vec![BigUint::zero(); shift as usize];
        out.extend(coeffs);
        return Ok(out);
    }
    let drop = shift.unsigned_abs() as usize;
    if coeffs.iter().take(drop).any(|c| !c.is_zero()) {
        return Err(Error::NegativeExponent { shift });
    }
    Ok(coeffs.into_iter().skip(drop).collect())
}

/// `B_{r,s}(x)` obtained by iterating [`bell_poly_recursion`] from `x^{s_1}`.
pub fn bell_polynomial_by_operators(t: &StringType) -> Result<BellPolynomial> {
    t.require_nonnegative_prefix()?;
    let mut poly = BellPolynomial::monomial(t.first_s());
    let factors = t.prefix_excesses().iter().zip(t.r()).zip(t.s()).skip(1);
    for ((&d, &r), &s) in factors {
        poly = bell_poly_recursion(&poly, d, r, s)?;
    }
    Ok(poly)
}

/// Number of `m`-settlements, `∏_j (m + d_{j−1})_{s_j}`, with the signed
/// falling factorial.
pub fn settlement_product(t: &StringType, m: u64) -> BigInt {
    let prefix = t.prefix_excesses();
    let mut acc = BigInt::one();
    for (j, &s) in t.s().iter().enumerate() {
        acc *= falling_factorial(m as i64 + prefix[j], u64::from(s));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Both sides of `∏_j (x + d_{j−1})_{s_j} = Σ_k S(k) (x)_k` expressed in the
/// falling-factorial basis: `(lhs, rhs)` with entry `k` the coefficient of
/// `(x)_k`.
pub fn polynomial_identity_coefficients(t: &StringType) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    t.require_nonnegative_prefix()?;
    let deg = t.total_s();
    // product polynomial in the monomial basis
    let mut mono = vec![BigInt::zero(); deg + 1];
    mono[0] = BigInt::one();
    let mut cur_deg = 0;
    for (j, &s) in t.s().iter().enumerate() {
        let d = t.prefix_excesses()[j];
        for i in 0..i64::from(s) {
            // multiply by (x + d − i)
            let c = BigInt::from(d - i);
            for e in (0..=cur_deg + 1).rev() {
                let lower = if e > 0 {
                    mono[e - 1].clone()
                } else {
                    BigInt::zero()
                };
                mono[e] = &mono[e] * &c + lower;
            }
            cur_deg += 1;
        }
    }
    // x^e = Σ_k S2(e, k) (x)_k with classical Stirling numbers of the second kind
    let s2 = classical_stirling_triangle(deg);
    let mut lhs = vec![BigInt::zero(); deg + 1];
    for (e, c) in mono.iter().enumerate() {
        for (k, s) in s2[e].iter().enumerate() {
            lhs[k] += c * BigInt::from(s.clone());
        }
    }
    let table = stirling_recurrence(t);
    let rhs = (0..=deg).map(|k| BigInt::from(table.get(k))).collect();
    Ok((lhs, rhs))
}

/// Evaluates both sides of the polynomial identity at integer `x` and checks
/// them, together with the coefficient-level comparison.
pub fn check_polynomial_identity(t: &StringType, x: i64) -> Result<bool> {
    let (lhs_c, rhs_c) = polynomial_identity_coefficients(t)?;
    let prefix = t.prefix_excesses();
    let mut lhs = BigInt::one();
    for (j, &s) in t.s().iter().enumerate() {
        lhs *= falling_factorial(x + prefix[j], u64::from(s));
    }
    let table = stirling_recurrence(t);
    let rhs: BigInt = table
        .values
        .iter()
        .map(|(&k, v)| BigInt::from(v.clone()) * falling_factorial(x, k as u64))
        .sum();
    Ok(lhs == rhs && lhs_c == rhs_c)
}

/// Rows `0..=n` of the classical triangle `S(e, k)` from
/// `S(e+1, k) = S(e, k−1) + k S(e, k)`, `S(0, 0) = 1`.
pub fn classical_stirling_triangle(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for e in 0..n {
        let prev = &rows[e];
        let mut row = vec![BigUint::zero(); e + 2];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let left = prev.get(k - 1).cloned().unwrap_or_default();
            let stay = prev.get(k).map(|v| v * k).unwrap_or_default();
            *slot = left + stay;
        }
        rows.push(row);
    }
    rows
}

struct DobinskiSeries<'a> {
    t: &'a StringType,
    x: &'a BigRational,
    /// first index from which every falling factorial in the product is positive
    stable_from: u64,
}

impl<'a> DobinskiSeries<'a> {
    fn new(t: &'a StringType, x: &'a BigRational) -> Self {
        let prefix = t.prefix_excesses();
        let stable_from = t
            .s()
            .iter()
            .enumerate()
            .map(|(j, &s)| (i64::from(s) - prefix[j]).max(0) as u64)
            .max()
            .unwrap_or(0)
            .max(t.first_s() as u64);
        DobinskiSeries { t, x, stable_from }
    }

    fn term(&self, m: u64) -> BigRational {
        let p = settlement_product(self.t, m);
        let xm = num_traits::pow(self.x.clone(), m as usize);
        BigRational::from_integer(p) * xm / BigRational::from_integer(factorial(m).into())
    }

    /// Upper bound on `term(m+1)/term(m)`, valid for all later ratios too
    /// once `m ≥ stable_from` since each factor decreases in `m`.
    fn ratio(&self, m: u64) -> BigRational {
        let prefix = self.t.prefix_excesses();
        let mut ratio = self.x / BigRational::from_integer((m + 1).into());
        for (j, &s) in self.t.s().iter().enumerate() {
            let top = m as i64 + 1 + prefix[j];
            let bottom = top - i64::from(s);
            ratio *= BigRational::new(top.into(), bottom.into());
        }
        ratio
    }
}

/// Partial sums `Σ_{m=s_1}^{s_1+i} ∏_j (m+d_{j−1})_{s_j} x^m/m!` for
/// `i = 0..count`, exact.
pub fn dobinski_partial_sums(
    t: &StringType,
    x: &BigRational,
    count: usize,
) -> Result<Vec<BigRational>> {
    t.require_nonnegative_prefix()?;
    let series = DobinskiSeries::new(t, x);
    let mut acc = BigRational::zero();
    Ok((0..count as u64)
        .map(|i| {
            acc += series.term(t.first_s() as u64 + i);
            acc.clone()
        })
        .collect())
}

/// `B_{r,s}(x) = e^{−x} Σ_{m≥s_1} ∏_j (m+d_{j−1})_{s_j} x^m/m!` to
/// `target_digits` significant digits.
pub fn dobinski_eval(t: &StringType, x: &BigRational, target_digits: u32) -> Result<ApproxValue> {
    dobinski_eval_with(t, x, target_digits, DEFAULT_MAX_TERMS)
}

pub fn dobinski_eval_with(
    t: &StringType,
    x: &BigRational,
    target_digits: u32,
    max_terms: usize,
) -> Result<ApproxValue> {
    t.require_nonnegative_prefix()?;
    if x.is_negative() {
        return Err(Error::InvalidType(
            "Dobiński argument must be nonnegative".into(),
        ));
    }
    if x.is_zero() {
        return Ok(ApproxValue {
            value: Decimal::zero(),
            precision_digits: target_digits,
            terms_used: 1,
        });
    }
    let series = DobinskiSeries::new(t, x);
    let tol = BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10u8), target_digits as usize + 2),
    );
    let mut partial = BigRational::zero();
    let mut m = t.first_s() as u64;
    let mut used = 0usize;
    loop {
        if used >= max_terms {
            return Err(Error::PrecisionUnreachable {
                digits: target_digits,
                max_terms,
            });
        }
        let term = series.term(m);
        partial += &term;
        used += 1;
        if m >= series.stable_from && !term.is_zero() {
            let rho = series.ratio(m);
            if rho < BigRational::one() {
                let tail = &term * &rho / (BigRational::one() - &rho);
                if tail <= &tol * &partial {
                    break;
                }
            }
        }
        m += 1;
    }
    let guard = target_digits + 10;
    let e_minus_x = Decimal::from_rational(&exp_rational(&-x.clone(), guard + 2), guard);
    let value = Decimal::from_rational(&(partial * e_minus_x.to_rational()), target_digits);
    Ok(ApproxValue {
        value,
        precision_digits: target_digits,
        terms_used: used,
    })
}

/// Coherent-state matrix element `(z*)^{d_n} B_{r,s}(|z|²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentValue {
    /// Exact value for Gaussian-rational `z`.
    pub exact: Complex<BigRational>,
    pub re: Decimal,
    pub im: Decimal,
    pub precision_digits: u32,
}

pub fn coherent_expectation(
    t: &StringType,
    z: &Complex<BigRational>,
    target_digits: u32,
) -> Result<CoherentValue> {
    t.require_nonnegative_prefix()?;
    let poly = bell_polynomial(t);
    let modulus_sq = z.norm_sqr();
    let bell = poly.eval(&modulus_sq);
    let conj_pow = num_traits::pow(z.conj(), t.excess() as usize);
    let exact = conj_pow * Complex::new(bell, BigRational::zero());
    Ok(CoherentValue {
        re: Decimal::from_rational(&exact.re, target_digits),
        im: Decimal::from_rational(&exact.im, target_digits),
        exact,
        precision_digits: target_digits,
    })
}

/// Exact rational from a finite `f64`, for callers holding floating inputs.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(r: &[u32], s: &[u32]) -> StringType {
        StringType::new(r.to_vec(), s.to_vec()).unwrap()
    }

    fn table(pairs: &[(usize, u64)]) -> BTreeMap<usize, BigUint> {
        pairs.iter().map(|&(k, v)| (k, BigUint::from(v))).collect()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn four_bugs() -> StringType {
        st(&[3, 2, 1, 3], &[2, 2, 2, 3])
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(
            stirling_recurrence(&st(&[3], &[2])).values,
            table(&[(2, 1)])
        );
        assert_eq!(
            stirling_recurrence(&StringType::uniform(1, 1, 3).unwrap()).values,
            table(&[(1, 1), (2, 3), (3, 1)])
        );
        assert_eq!(
            stirling_recurrence(&StringType::uniform(2, 1, 2).unwrap()).values,
            table(&[(1, 2), (2, 1)])
        );
    }

    #[test]
    fn recurrence_handles_negative_prefix() {
        // a† a · a† a² = a†² a³ + a† a², keys count annihilators
        let t = st(&[1, 1], &[2, 1]);
        assert_eq!(stirling_recurrence(&t).values, table(&[(2, 1), (3, 1)]));
    }

    #[test]
    fn closed_form_examples() {
        for n in 1..=6 {
            let t = StringType::uniform(1, 1, n).unwrap();
            assert_eq!(stirling_closed_form(&t, n).unwrap(), big(1));
            assert_eq!(stirling_closed_form(&t, 1).unwrap(), big(1));
        }
        let t = StringType::uniform(1, 1, 3).unwrap();
        assert_eq!(stirling_closed_form(&t, 2).unwrap(), big(3));
        let f = four_bugs();
        let rec = stirling_recurrence(&f);
        for k in 2..=9 {
            assert_eq!(stirling_closed_form(&f, k).unwrap(), rec.get(k), "k={k}");
        }
    }

    #[test]
    fn closed_form_errors() {
        let t = StringType::uniform(1, 1, 3).unwrap();
        assert_eq!(
            stirling_closed_form(&t, 0),
            Err(Error::OutOfRange { k: 0, lo: 1, hi: 3 })
        );
        assert!(matches!(
            stirling_closed_form(&t, 4),
            Err(Error::OutOfRange { .. })
        ));
        let bad = st(&[1, 3], &[2, 1]);
        assert!(matches!(
            stirling_closed_form(&bad, 2),
            Err(Error::NonCanonicalPrefix { .. })
        ));
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(bell_number(&st(&[2], &[3])), big(1));
        assert_eq!(bell_number(&StringType::uniform(1, 1, 3).unwrap()), big(5));
        assert_eq!(bell_number(&StringType::uniform(2, 1, 3).unwrap()), big(13));
    }

    #[test]
    fn bell_polynomial_examples() {
        assert_eq!(
            bell_polynomial(&st(&[1], &[3])),
            BellPolynomial::monomial(3)
        );
        let p = bell_polynomial(&StringType::uniform(1, 1, 2).unwrap());
        assert_eq!(p.coeffs, vec![big(0), big(1), big(1)]);
        let p = bell_polynomial(&StringType::uniform(2, 1, 2).unwrap());
        assert_eq!(p.coeffs, vec![big(0), big(2), big(1)]);
        assert_eq!(p.lowest_power(), Some(1));
        assert_eq!(p.eval(&q(1, 1)), q(3, 1));
    }

    #[test]
    fn operator_recursion_examples() {
        let base = BellPolynomial::monomial(1);
        let next = bell_poly_recursion(&base, 0, 1, 1).unwrap();
        assert_eq!(next.coeffs, vec![big(0), big(1), big(1)]);

        let base = BellPolynomial::monomial(2);
        let ext = bell_poly_recursion(&base, 1, 2, 2).unwrap();
        assert_eq!(ext, bell_polynomial(&st(&[3, 2], &[2, 2])));

        assert_eq!(
            bell_polynomial_by_operators(&four_bugs()).unwrap(),
            bell_polynomial(&four_bugs())
        );
    }

    #[test]
    fn operator_recursion_rejects_invalid_prefix() {
        assert!(matches!(
            bell_poly_recursion(&BellPolynomial::monomial(1), -1, 1, 1),
            Err(Error::NonCanonicalPrefix { .. })
        ));
        // X^{-2}(D+I)X^3 1 = X^{-2}(3x^2 + x^3)
        let p = bell_poly_recursion(&BellPolynomial::monomial(0), 3, 1, 1).unwrap();
        assert_eq!(p.coeffs, vec![big(3), big(1)]);
        // X^{-2}(D+I)X^3 (1 + x) = X^{-2}(3x^2 + 5x^3 + x^4)
        let p = BellPolynomial {
            coeffs: vec![big(1), big(1)],
        };
        assert_eq!(
            bell_poly_recursion(&p, 3, 1, 1).unwrap().coeffs,
            vec![big(3), big(5), big(1)]
        );
    }

    #[test]
    fn negative_shift_guard() {
        assert_eq!(
            shift_powers(vec![big(1), big(0)], -1),
            Err(Error::NegativeExponent { shift: -1 })
        );
        assert_eq!(shift_powers(vec![big(0), big(2)], -1), Ok(vec![big(2)]));
        assert_eq!(shift_powers(vec![big(2)], 1), Ok(vec![big(0), big(2)]));
    }

    #[test]
    fn settlement_product_examples() {
        for m in 0..8u64 {
            assert_eq!(
                settlement_product(&st(&[2], &[3]), m),
                falling_factorial(m as i64, 3)
            );
        }
        assert_eq!(
            settlement_product(&StringType::uniform(1, 2, 1).unwrap(), 0),
            BigInt::zero()
        );
        assert_eq!(settlement_product(&four_bugs(), 2), BigInt::zero());
        assert_eq!(settlement_product(&four_bugs(), 3), BigInt::from(5184));
    }

    #[test]
    fn polynomial_identity_examples() {
        let t = StringType::uniform(2, 1, 2).unwrap();
        assert!(check_polynomial_identity(&t, 3).unwrap());
        assert_eq!(settlement_product(&t, 3), BigInt::from(12));
        assert!(check_polynomial_identity(&t, 0).unwrap());
        for m in 1..=12 {
            assert!(check_polynomial_identity(&four_bugs(), m).unwrap());
        }
        // a polynomial identity, so negative integers work too
        assert!(check_polynomial_identity(&four_bugs(), -4).unwrap());
        let (lhs, rhs) = polynomial_identity_coefficients(&four_bugs()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(matches!(
            check_polynomial_identity(&st(&[1, 3], &[2, 1]), 2),
            Err(Error::NonCanonicalPrefix { .. })
        ));
    }

    #[test]
    fn classical_triangle_rows() {
        let tri = classical_stirling_triangle(4);
        assert_eq!(tri[4], vec![big(0), big(1), big(7), big(6), big(1)]);
    }

    #[test]
    fn dobinski_examples() {
        let t = StringType::uniform(1, 1, 3).unwrap();
        let zero = dobinski_eval(&t, &q(0, 1), 20).unwrap();
        assert_eq!(zero.value, Decimal::zero());

        let v = dobinski_eval(&t, &q(1, 1), 20).unwrap();
        assert!(v.value.relative_error(&q(5, 1)) < q(1, 1_000_000_000));
        assert!(v.terms_used >= 1);

        let t = StringType::uniform(2, 1, 2).unwrap();
        let v = dobinski_eval(&t, &q(1, 1), 20).unwrap();
        assert!(v.value.relative_error(&q(3, 1)) < q(1, 1_000_000_000));

        let x = q(5, 2);
        let exact = bell_polynomial(&four_bugs()).eval(&x);
        let v = dobinski_eval(&four_bugs(), &x, 30).unwrap();
        assert!(v.value.relative_error(&exact) < q(1, 10i64.pow(18)));
    }

    #[test]
    fn dobinski_term_cap() {
        let t = StringType::uniform(3, 3, 3).unwrap();
        assert_eq!(
            dobinski_eval_with(&t, &q(1, 1), 30, 5),
            Err(Error::PrecisionUnreachable {
                digits: 30,
                max_terms: 5
            })
        );
        assert!(matches!(
            dobinski_eval(&st(&[1, 3], &[2, 1]), &q(1, 1), 10),
            Err(Error::NonCanonicalPrefix { .. })
        ));
    }

    #[test]
    fn dobinski_partial_sums_monotone_and_bounded() {
        let t = four_bugs();
        let x = q(3, 2);
        let sums = dobinski_partial_sums(&t, &x, 40).unwrap();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        // partial sum up to index N ≤ B(x)·Σ_{i≤N} x^i/i! ≤ B(x) e^x
        let b = bell_polynomial(&t).eval(&x);
        for (i, s) in sums.iter().enumerate() {
            let n = t.first_s() + i;
            let mut e_n = BigRational::zero();
            let mut term = BigRational::one();
            for j in 0..=n {
                if j > 0 {
                    term = term * &x / BigRational::from_integer(j.into());
                }
                e_n += &term;
            }
            assert!(*s <= &b * &e_n);
        }
    }

    #[test]
    fn coherent_examples() {
        let t = StringType::uniform(1, 1, 3).unwrap();
        let zero = Complex::new(q(0, 1), q(0, 1));
        let one = Complex::new(q(1, 1), q(0, 1));
        assert_eq!(coherent_expectation(&t, &zero, 10).unwrap().exact, zero);
        assert_eq!(
            coherent_expectation(&t, &one, 10).unwrap().exact.re,
            q(5, 1)
        );

        // d_n = 1: conj(z) B(|z|^2) with z = i and B = x^2 → −i
        let t = st(&[3], &[2]);
        let i = Complex::new(q(0, 1), q(1, 1));
        let v = coherent_expectation(&t, &i, 10).unwrap();
        assert_eq!(v.exact, Complex::new(q(0, 1), q(-1, 1)));
        assert_eq!(v.im.to_string(), "-1.000000000");
    }

    #[test]
    fn rational_from_float() {
        assert_eq!(rational_from_f64(0.5), Some(q(1, 2)));
    }
}

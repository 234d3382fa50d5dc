//! Truncated formal power series with exact rational coefficients, and the
//! generating functions of the uniform `(r, 1)` case.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{exp_rational, factorial, Decimal};
use crate::error::{Error, Result};
use crate::stirling::{ApproxValue, DEFAULT_MAX_TERMS};

/// Whether `a_n` is read as the coefficient of `x^n` or of `x^n / n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Ordinary,
    Exponential,
}

/// `a_0 + a_1 x + ⋯ + a_N x^N + O(x^{N+1})`, stored with ordinary
/// coefficients regardless of the convention flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
    convention: Convention,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl PowerSeries {
    /// Series known up to and including `x^{coeffs.len() − 1}`.
    pub fn new(coeffs: Vec<BigRational>, convention: Convention) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least its constant term"
        );
        PowerSeries { coeffs, convention }
    }

    pub fn from_integers(coeffs: &[i64], convention: Convention) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| rat(c)).collect(), convention)
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![BigRational::zero(); order + 1], Convention::Ordinary)
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Ordinary coefficient `a_n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `n! · a_n`, the count an exponential generating function encodes.
    pub fn egf_coefficient(&self, n: usize) -> BigRational {
        self.coeff(n) * BigRational::from_integer(factorial(n as u64).into())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries::new(coeffs, self.convention)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a * c).collect(), self.convention)
    }

    /// Raises to a nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = PowerSeries::one(self.order()).with_convention(self.convention);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Term-by-term derivative; the result is known to one order less.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0).with_convention(self.convention);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a * rat(n as i64))
            .collect();
        PowerSeries::new(coeffs, self.convention)
    }

    /// `exp(f)` for `f(0) = 0`, from `g′ = f′ g`:
    /// `n g_n = Σ_{k=1}^{n} k f_k g_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut g = vec![BigRational::zero(); order + 1];
        g[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * rat(k as i64) * &g[n - k];
            }
            g[n] = acc / rat(n as i64);
        }
        Ok(PowerSeries::new(g, self.convention))
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        PowerSeries::new(coeffs, self.convention)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
            .collect();
        PowerSeries::new(coeffs, self.convention)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Cauchy product on ordinary coefficients, truncated to the smaller order.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|k| &self.coeffs[k] * &rhs.coeffs[n - k])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect();
        PowerSeries::new(coeffs, self.convention)
    }
}

pub fn series_mul(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    f * g
}

pub fn series_pow(f: &PowerSeries, e: u32) -> PowerSeries {
    f.pow(e)
}

pub fn series_derivative(f: &PowerSeries) -> PowerSeries {
    f.derivative()
}

pub fn series_exp(f: &PowerSeries) -> Result<PowerSeries> {
    f.exp()
}

fn require_arity(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidType(format!(
            "arity {r}: the tree series needs r >= 2; r = 1 gives the ordinary Bell numbers"
        )));
    }
    Ok(())
}

/// EGF `T_r(x)` of increasing `r`-ary planar trees, built by solving
/// `y′ = y^r`, `y(0) = 1` coefficient by coefficient.
pub fn tree_series(r: u32, order: usize) -> Result<PowerSeries> {
    require_arity(r)?;
    let mut coeffs = vec![BigRational::one()];
    for n in 0..order {
        // [x^n] y^r only involves a_0..a_n
        let known = PowerSeries::new(coeffs.clone(), Convention::Exponential);
        let next = known.pow(r).coeff(n) / rat(n as i64 + 1);
        coeffs.push(next);
    }
    Ok(PowerSeries::new(coeffs, Convention::Exponential))
}

/// `T_r(x) = (1 − (r−1)x)^{1/(1−r)}` by the binomial series:
/// `a_n = ∏_{i<n} (1 + i(r−1)) / n!`.
pub fn tree_series_closed_form(r: u32, order: usize) -> Result<PowerSeries> {
    require_arity(r)?;
    let step = BigInt::from(r - 1);
    let mut num = BigInt::one();
    let coeffs = (0..=order)
        .map(|n| {
            if n > 0 {
                num *= BigInt::one() + &step * (n as i64 - 1);
            }
            BigRational::new(num.clone(), factorial(n as u64).into())
        })
        .collect();
    Ok(PowerSeries::new(coeffs, Convention::Exponential))
}

/// `Σ_n B_{r,1}(n) x^n / n! = exp(T_r(x) − 1)`.
pub fn forest_egf(r: u32, order: usize) -> Result<PowerSeries> {
    let t = tree_series(r, order)?;
    let shifted = &t - &PowerSeries::one(order);
    Ok(shifted.exp()?.with_convention(Convention::Exponential))
}

/// `k`-th term `∏_{i=1}^{n−1} (i + k/(r−1)) / (k−1)!` of the explicit sum,
/// using `Γ(n + a)/Γ(1 + a) = (1+a)(2+a)⋯(n−1+a)`.
fn bell_r1_term(r: u32, n: u32, k: u64) -> BigRational {
    let a = BigRational::new(BigInt::from(k), BigInt::from(r - 1));
    let rising = (1..n).fold(BigRational::one(), |acc, i| acc * (rat(i64::from(i)) + &a));
    rising / BigRational::from_integer(factorial(k - 1).into())
}

fn check_bell_r1_args(r: u32, n: u32) -> Result<()> {
    require_arity(r)?;
    if n == 0 {
        return Err(Error::InvalidType("n must be at least 1".into()));
    }
    Ok(())
}

/// Partial sums `(r−1)^{n−1} Σ_{k=1}^{K} term_k` for `K = 1..=count`; the
/// Bell number is their limit divided by `e`.
pub fn bell_r1_partial_sums(r: u32, n: u32, count: usize) -> Result<Vec<BigRational>> {
    check_bell_r1_args(r, n)?;
    let prefactor = BigRational::from_integer(num_traits::pow(BigInt::from(r - 1), n as usize - 1));
    let mut acc = BigRational::zero();
    Ok((1..=count as u64)
        .map(|k| {
            acc += bell_r1_term(r, n, k);
            &acc * &prefactor
        })
        .collect())
}

/// `B_{r,1}(n) = ((r−1)^{n−1}/e) Σ_{k≥1} Γ(n + k/(r−1)) / (Γ(1 + k/(r−1)) (k−1)!)`.
pub fn bell_r1_numeric(r: u32, n: u32, target_digits: u32) -> Result<ApproxValue> {
    bell_r1_numeric_with(r, n, target_digits, DEFAULT_MAX_TERMS)
}

pub fn bell_r1_numeric_with(
    r: u32,
    n: u32,
    target_digits: u32,
    max_terms: usize,
) -> Result<ApproxValue> {
    check_bell_r1_args(r, n)?;
    let tol = BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10u8), target_digits as usize + 2),
    );
    let mut partial = BigRational::zero();
    let mut small_run = 0;
    let mut k: u64 = 0;
    while small_run < 3 {
        if k as usize >= max_terms {
            return Err(Error::PrecisionUnreachable {
                digits: target_digits,
                max_terms,
            });
        }
        k += 1;
        let term = bell_r1_term(r, n, k);
        partial += &term;
        if term < &tol * &partial {
            small_run += 1;
        } else {
            small_run = 0;
        }
    }
    let prefactor = BigRational::from_integer(num_traits::pow(BigInt::from(r - 1), n as usize - 1));
    let guard = target_digits + 10;
    let e_inv = Decimal::from_rational(&exp_rational(&rat(-1), guard + 2), guard);
    let value = Decimal::from_rational(&(partial * prefactor * e_inv.to_rational()), target_digits);
    Ok(ApproxValue {
        value,
        precision_digits: target_digits,
        terms_used: k as usize,
    })
}

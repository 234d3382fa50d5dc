//! Exact integer helpers and a small arbitrary-precision decimal type.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Falling factorial `(l)_p = l (l−1) ⋯ (l−p+1)` with the signed definition
/// for negative `l`. `(l)_0 = 1`.
pub fn falling_factorial(l: i64, p: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..p {
        let f = l as i128 - i as i128;
        if f == 0 {
            return BigInt::zero();
        }
        acc *= BigInt::from(f);
    }
    acc
}

/// Falling factorial for nonnegative bases.
pub fn falling_factorial_u(l: u64, p: u64) -> BigUint {
    if p > l {
        return BigUint::zero();
    }
    (0..p).fold(BigUint::one(), |acc, i| acc * (l - i))
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // each partial product is itself a binomial coefficient, so division is exact
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of decimal digits of `|n|`, with zero counted as one digit.
fn digit_count(n: &BigInt) -> i64 {
    n.magnitude().to_str_radix(10).len() as i64
}

fn pow10(e: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u8), e as usize)
}

/// Rational `10^e` for any sign of `e`.
fn pow10_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u64))
    } else {
        BigRational::new(BigInt::one(), pow10(e.unsigned_abs()))
    }
}

/// Rounds to the nearest integer, ties away from zero.
pub fn round_rational(q: &BigRational) -> BigInt {
    let two = BigInt::from(2u8);
    let (num, den) = (q.numer(), q.denom());
    let (quot, rem) = num.abs().div_rem(den);
    let rounded = if rem * &two >= *den { quot + 1u8 } else { quot };
    if num.is_negative() {
        -rounded
    } else {
        rounded
    }
}

/// Decimal number `mantissa · 10^{−scale}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    scale: i64,
}

impl Decimal {
    pub fn zero() -> Self {
        Decimal {
            mantissa: BigInt::zero(),
            scale: 0,
        }
    }

    /// Rounds `q` to `digits` significant decimal digits.
    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        assert!(digits >= 1, "at least one significant digit is required");
        if q.is_zero() {
            return Decimal::zero();
        }
        let abs = q.abs();
        // floor(log10 |q|) is within one of this estimate
        let mut e = digit_count(abs.numer()) - digit_count(abs.denom());
        if abs < pow10_rational(e) {
            e -= 1;
        }
        debug_assert!(abs >= pow10_rational(e) && abs < pow10_rational(e + 1));
        let scale = i64::from(digits) - 1 - e;
        let mantissa = round_rational(&(q * pow10_rational(scale)));
        Decimal { mantissa, scale }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Decimal {
            mantissa: n,
            scale: 0,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.mantissa.clone()) * pow10_rational(-self.scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    /// `|self − exact| / |exact|`, or the absolute error when `exact` is zero.
    pub fn relative_error(&self, exact: &BigRational) -> BigRational {
        let diff = (self.to_rational() - exact).abs();
        if exact.is_zero() {
            diff
        } else {
            diff / exact.abs()
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_negative() { "-" } else { "" };
        let digits = self.mantissa.magnitude().to_str_radix(10);
        match self.scale.cmp(&0) {
            Ordering::Less | Ordering::Equal => {
                let zeros = "0".repeat(self.scale.unsigned_abs() as usize);
                if self.mantissa.is_zero() {
                    write!(f, "0")
                } else {
                    write!(f, "{sign}{digits}{zeros}")
                }
            }
            Ordering::Greater => {
                let scale = self.scale as usize;
                let padded = if digits.len() <= scale {
                    format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
                } else {
                    digits
                };
                let (int, frac) = padded.split_at(padded.len() - scale);
                write!(f, "{sign}{int}.{frac}")
            }
        }
    }
}

/// Approximates `e^x` for rational `x` to relative error below `10^{−digits}`.
///
/// Summation stops once the geometric bound on the Taylor tail drops under
/// the target; for negative `x` the reciprocal of `e^{|x|}` is returned.
pub fn exp_rational(x: &BigRational, digits: u32) -> BigRational {
    if x.is_negative() {
        return exp_rational(&-x, digits).recip();
    }
    let tol = pow10_rational(-i64::from(digits) - 1);
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let mut i: u64 = 0;
    loop {
        i += 1;
        term = term * x / BigRational::from_integer(i.into());
        sum += &term;
        // later ratios x/(j+1) are all below `ratio`
        let ratio = x / BigRational::from_integer((i + 1).into());
        if ratio < BigRational::one() {
            let tail = &term * &ratio / (BigRational::one() - &ratio);
            if tail <= &tol * &sum {
                return sum;
            }
        }
    }
}

/// Converts a nonnegative rational to `f64` without going through `to_f64`
/// on huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    Decimal::from_rational(q, 20).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
        assert_eq!(falling_factorial(-1, 2), BigInt::from(2));
        assert_eq!(falling_factorial(-1, 3), BigInt::from(-6));
        assert_eq!(falling_factorial(7, 0), BigInt::one());
        assert_eq!(falling_factorial(0, 0), BigInt::one());
        assert_eq!(falling_factorial_u(5, 2), BigUint::from(20u8));
        assert_eq!(falling_factorial_u(2, 3), BigUint::zero());
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(5, 2), BigUint::from(10u8));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(40, 20), BigUint::from(137_846_528_820u64));
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
    }

    #[test]
    fn decimal_rounding_and_display() {
        assert_eq!(Decimal::from_rational(&q(1, 3), 5).to_string(), "0.33333");
        assert_eq!(Decimal::from_rational(&q(2, 3), 3).to_string(), "0.667");
        assert_eq!(Decimal::from_rational(&q(5, 1), 3).to_string(), "5.00");
        assert_eq!(Decimal::from_rational(&q(12345, 1), 2).to_string(), "12000");
        assert_eq!(Decimal::from_rational(&q(-1, 8), 2).to_string(), "-0.13");
        assert_eq!(Decimal::from_rational(&q(1, 1000), 1).to_string(), "0.001");
        assert_eq!(Decimal::from_rational(&q(0, 1), 4).to_string(), "0");
        assert_eq!(Decimal::from_rational(&q(999, 1000), 2).to_string(), "1.00");
    }

    #[test]
    fn exp_matches_known_digits() {
        let e = Decimal::from_rational(&exp_rational(&q(1, 1), 40), 30);
        assert_eq!(e.to_string(), "2.71828182845904523536028747135");
        let inv = Decimal::from_rational(&exp_rational(&q(-1, 1), 40), 20);
        assert_eq!(inv.to_string(), "0.36787944117144232160");
        assert_eq!(exp_rational(&q(0, 1), 10), BigRational::one());
    }

    #[test]
    fn decimal_relative_error() {
        let d = Decimal::from_rational(&q(1, 3), 10);
        assert!(d.relative_error(&q(1, 3)) < q(1, 1_000_000_000));
    }
}

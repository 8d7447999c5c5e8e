//! Exact rational scalars and the rounded-rational extended-precision reals.
//!
//! Everything that the recurrences produce lives in the rational field, so the
//! exact scalar is a reduced `BigRational`. Quantities that involve the square
//! root in the limit of `a_n` are carried as rationals rounded to a fixed number
//! of decimal digits; see [`working_digits`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field for all exact computations.
pub type ExactScalar = BigRational;

/// Environment variable holding the number of significant decimal digits used
/// by the extended-precision suites.
pub const DIGITS_ENV: &str = "MSOP_DIGITS";

/// Default significant digits when [`DIGITS_ENV`] is unset.
pub const DEFAULT_DIGITS: u32 = 30;

/// Extra digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 20;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &ExactScalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite double (every double is a dyadic rational).
pub fn from_f64(x: f64) -> Result<ExactScalar> {
    BigRational::from_float(x).ok_or_else(|| Error::NonFinite(x.to_string()))
}

/// Parses `p/q`, an integer, or a plain decimal (`-0.125`, `1e-3`) into an
/// exact rational. Decimals are read in base ten, not through a double.
pub fn parse_rational(s: &str) -> Result<ExactScalar> {
    let bad = || Error::Parse(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("rational literal {s}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|ch| ch.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    // trailing "0" above keeps the parse total for inputs like "5."; undo it here
    let scale = exponent - frac_part.len() as i64 - 1;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(all * sign);
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(value)
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Significant digits for the extended-precision suites, from [`DIGITS_ENV`].
pub fn working_digits() -> u32 {
    std::env::var(DIGITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&d| d >= 16)
        .unwrap_or(DEFAULT_DIGITS)
}

fn pow10(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

/// Rounds to the nearest multiple of `10^-digits`.
pub fn round_to_digits(x: &ExactScalar, digits: u32) -> ExactScalar {
    let scale = pow10(digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// Exact square root when `x` is the square of a rational.
pub fn exact_sqrt(x: &ExactScalar) -> Option<ExactScalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Square root to within `10^-digits`, exact when `x` is a rational square.
pub fn sqrt_to_digits(x: &ExactScalar, digits: u32) -> Result<ExactScalar> {
    if x.is_negative() {
        return Err(Error::Domain(format!("square root of negative {}", format_rational(x))));
    }
    if let Some(r) = exact_sqrt(x) {
        return Ok(r);
    }
    let scale = pow10(digits);
    let scaled = (x * BigRational::from_integer(&scale * &scale)).floor().to_integer();
    Ok(BigRational::new(scaled.sqrt(), scale))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &ExactScalar, n: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += ExactScalar::one();
    }
    acc
}

/// `true` when the reduced form is canonical (positive denominator, coprime).
pub fn is_canonical(x: &ExactScalar) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&int(-3), 5), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("2.5e-2").unwrap(), rat(1, 40));
        assert_eq!(parse_rational("3e2").unwrap(), int(300));
        assert_eq!(parse_rational("5.").unwrap(), int(5));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn format_round_trips() {
        for s in ["13/5", "-1/3", "0", "42"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        let r = sqrt_to_digits(&int(2), 40).unwrap();
        let err = (&r * &r - int(2)).abs();
        assert!(err < rat(1, 1_000_000_000_000_000_000));
        assert!(sqrt_to_digits(&int(-1), 10).is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_to_digits(&rat(1, 3), 3), rat(333, 1000));
        assert_eq!(round_to_digits(&rat(2, 3), 2), rat(67, 100));
    }

    #[test]
    fn exact_double_conversion() {
        assert_eq!(from_f64(0.5).unwrap(), rat(1, 2));
        assert!(from_f64(f64::NAN).is_err());
        assert_eq!(to_f64(&rat(1, 4)), 0.25);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}

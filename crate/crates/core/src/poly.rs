//! Dense univariate polynomials over the exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{binomial, format_rational, to_f64, ExactScalar};

/// Monomial-basis polynomial; `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactScalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = ExactScalar::one();
        Polynomial { coeffs }
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: ExactScalar, c1: ExactScalar) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Horner evaluation in the rationals.
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in doubles.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `p(x + 1)`.
    pub fn shift_by_one(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![ExactScalar::zero(); n];
        for (i, ci) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += ci * ExactScalar::from_integer(binomial(i, j));
            }
        }
        Self::new(out)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactScalar::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Rescales so that the leading coefficient becomes `lc`. The zero
    /// polynomial is returned unchanged.
    pub fn with_leading_coefficient(&self, lc: &ExactScalar) -> Self {
        match self.leading_coefficient() {
            Some(cur) => self.scale(&(lc / cur)),
            None => self.clone(),
        }
    }
}

/// Forward difference `(Δp)(x) = p(x+1) - p(x)`.
pub fn forward_difference(p: &Polynomial) -> Polynomial {
    &p.shift_by_one() - p
}

/// Stirling numbers of the second kind `S2(j, k)` for `0 <= k <= j <= n`.
pub fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    table[0][0] = BigInt::one();
    for j in 1..=n {
        for k in 1..=j {
            table[j][k] = BigInt::from(k) * &table[j - 1][k] + &table[j - 1][k - 1];
        }
    }
    table
}

/// Converts falling-factorial moments `E[k^(j)]` into power moments `E[k^j]`.
pub fn stirling_convert(falling_moments: &[ExactScalar]) -> Vec<ExactScalar> {
    let n = falling_moments.len();
    if n == 0 {
        return Vec::new();
    }
    let s2 = stirling2_table(n - 1);
    (0..n)
        .map(|j| {
            (0..=j).fold(ExactScalar::zero(), |acc, k| {
                acc + &falling_moments[k] * ExactScalar::from_integer(s2[j][k].clone())
            })
        })
        .collect()
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, c.abs().is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, is_canonical, rat};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn forward_difference_examples() {
        assert!(forward_difference(&p(&[5])).is_zero());
        assert_eq!(forward_difference(&p(&[0, 0, 1])), p(&[1, 2]));
        assert_eq!(forward_difference(&p(&[0, 0, 0, 1])), p(&[1, 3, 3]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&int(2)), int(3));
        assert_eq!(Polynomial::zero().eval(&rat(3, 7)), int(0));
        assert_eq!(p(&[0, 0, 0, 1]).eval(&rat(1, 2)), rat(1, 8));
        assert_eq!(p(&[0, 0, 0, 1]).eval_f64(0.5), 0.125);
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_convert(&[int(1)]), vec![int(1)]);
        assert_eq!(stirling_convert(&[int(1), rat(3, 2)]), vec![int(1), rat(3, 2)]);
        let m1 = rat(3, 2);
        let m2 = rat(7, 5);
        assert_eq!(
            stirling_convert(&[int(1), m1.clone(), m2.clone()]),
            vec![int(1), m1.clone(), m2 + m1]
        );
        // Poisson(1): all falling moments are 1, power moments are Bell numbers
        let bell = stirling_convert(&vec![int(1); 6]);
        assert_eq!(bell, [1, 1, 2, 5, 15, 52].map(int).to_vec());
    }

    #[test]
    fn display() {
        let q = Polynomial::new(vec![int(1), rat(-5, 2), rat(1, 2)]);
        assert_eq!(q.to_string(), "1/2*x^2 - 5/2*x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn derivative_and_rescale() {
        assert_eq!(p(&[4, 3, 2]).derivative(), p(&[3, 4]));
        let q = p(&[1, 2]).with_leading_coefficient(&int(6));
        assert_eq!(q, p(&[3, 6]));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..7).prop_map(|v| {
            Polynomial::new(v.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn difference_is_linear(f in small_poly(), g in small_poly(), an in -9i64..9, ad in 1i64..5) {
            let alpha = rat(an, ad);
            let lhs = forward_difference(&(&f.scale(&alpha) + &g));
            let rhs = &forward_difference(&f).scale(&alpha) + &forward_difference(&g);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn difference_drops_degree(f in small_poly()) {
            if let Some(d) = f.degree().filter(|&d| d >= 1) {
                let df = forward_difference(&f);
                prop_assert_eq!(df.degree(), Some(d - 1));
                let expected = f.leading_coefficient().unwrap() * int(d as i64);
                prop_assert_eq!(df.leading_coefficient().unwrap(), &expected);
            }
        }

        #[test]
        fn difference_matches_pointwise(f in small_poly(), k in -10i64..10) {
            let k = int(k);
            let lhs = forward_difference(&f).eval(&k);
            let rhs = f.eval(&(&k + int(1))) - f.eval(&k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pochhammer_splits(an in -12i64..12, ad in 1i64..5, s in 0usize..8, m in 0usize..8) {
            use crate::scalar::pochhammer;
            let a = rat(an, ad);
            let lhs = pochhammer(&a, s + m);
            let rhs = pochhammer(&a, s) * pochhammer(&(&a + int(s as i64)), m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn arithmetic_stays_canonical(f in small_poly(), g in small_poly()) {
            let prod = &f * &g;
            let sum = &f + &g;
            prop_assert!(prod.coeffs().iter().chain(sum.coeffs()).all(is_canonical));
            prop_assert!(prod.leading_coefficient().is_none_or(|c| !c.is_zero()));
        }
    }
}

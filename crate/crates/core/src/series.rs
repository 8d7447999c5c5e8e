//! Truncated power series in one variable over rationals, with optional
//! rounding to a fixed number of decimal digits.
//!
//! Used to pull Taylor coefficients out of closed-form generating functions by
//! convolving the binomial series of each factor. When every input is an exact
//! rational the arithmetic stays exact; otherwise a [`Precision::Digits`]
//! context keeps the denominators bounded.

use num_traits::{One, Zero};

use crate::scalar::{round_to_digits, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Exact,
    /// Round every coefficient to a multiple of `10^-d` after each product.
    Digits(u32),
}

impl Precision {
    pub fn round(self, x: ExactScalar) -> ExactScalar {
        match self {
            Precision::Exact => x,
            Precision::Digits(d) => round_to_digits(&x, d),
        }
    }
}

/// Coefficients `c_0..=c_N` of a series truncated at order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactScalar>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ExactScalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ExactScalar::one();
        s
    }

    /// `(1 - r w)^(-p) = Σ (p)_n r^n w^n / n!`.
    pub fn binomial(r: &ExactScalar, p: &ExactScalar, order: usize, prec: Precision) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = ExactScalar::one();
        for n in 0..=order {
            coeffs.push(c.clone());
            let nn = ExactScalar::from_integer(n.into());
            c = prec.round(c * (p + &nn) * r / (nn + ExactScalar::one()));
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    pub fn mul(&self, other: &Self, prec: Precision) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let acc = (0..=n).fold(ExactScalar::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[i] * &other.coeffs[n - i]
                    }
                });
                prec.round(acc)
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar, prec: Precision) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| prec.round(c * s)).collect(),
        }
    }

    /// Multiplies by `w`, dropping the coefficient pushed past the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ExactScalar::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        TruncatedSeries { coeffs }
    }

    /// `Σ_k weights[k] · self^k`; `self` must have a zero constant term.
    pub fn compose_polynomial(&self, weights: &[ExactScalar], prec: Precision) -> Self {
        debug_assert!(self.coeffs[0].is_zero());
        let order = self.order();
        let mut acc = Self::zero(order);
        let mut power = Self::one(order);
        for (k, w) in weights.iter().enumerate() {
            if k > order {
                break;
            }
            if !w.is_zero() {
                acc = acc.add(&power.scale(w, prec));
            }
            power = power.mul(self, prec);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn geometric_and_inverse() {
        let g = TruncatedSeries::binomial(&int(1), &int(1), 6, Precision::Exact);
        assert!(g.coeffs().iter().all(One::is_one));
        let inv = TruncatedSeries::binomial(&int(1), &int(-1), 6, Precision::Exact);
        let prod = g.mul(&inv, Precision::Exact);
        assert_eq!(prod, TruncatedSeries::one(6));
    }

    #[test]
    fn binomial_terminates_at_integer_exponent() {
        // (1 - 2w)^3
        let s = TruncatedSeries::binomial(&int(2), &int(-3), 5, Precision::Exact);
        assert_eq!(s.coeffs(), &[int(1), int(-6), int(12), int(-8), int(0), int(0)]);
    }

    #[test]
    fn half_powers_square_back() {
        let r = rat(1, 3);
        let h = TruncatedSeries::binomial(&r, &rat(1, 2), 10, Precision::Exact);
        let full = TruncatedSeries::binomial(&r, &int(1), 10, Precision::Exact);
        assert_eq!(h.mul(&h, Precision::Exact), full);
    }

    #[test]
    fn composition() {
        let z = TruncatedSeries::binomial(&int(1), &int(1), 5, Precision::Exact).shift_up();
        let out = z.compose_polynomial(&[int(0), int(1)], Precision::Exact);
        assert_eq!(out, z);
        // 1/(1 - Z) with Z = w/(1-w) equals (1-w)/(1-2w): 1, 1, 2, 4, 8, 16
        let weights = vec![int(1); 6];
        let out = z.compose_polynomial(&weights, Precision::Exact);
        assert_eq!(out.coeffs(), &[int(1), int(1), int(2), int(4), int(8), int(16)]);
    }

    #[test]
    fn rounding_bounds_error() {
        let r = rat(1, 7);
        let exact = TruncatedSeries::binomial(&r, &rat(1, 3), 12, Precision::Exact);
        let rounded = TruncatedSeries::binomial(&r, &rat(1, 3), 12, Precision::Digits(40));
        for (a, b) in exact.coeffs().iter().zip(rounded.coeffs()) {
            assert!(num_traits::Signed::abs(&(a - b)) * num_traits::pow(int(10), 38) < int(1));
        }
    }
}

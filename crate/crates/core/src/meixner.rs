//! Classical Meixner polynomials `m_n(x; β, c)` for arbitrary real `β`, and the
//! Pascal (negative binomial) measure they are orthogonal against.
//!
//! All measure quantities carry the `(1-c)^β` normalization so they stay in
//! the rational field: the normalized measure has unit mass.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{stirling_convert, Polynomial};
use crate::scalar::{factorial, format_rational, int, pochhammer, to_f64, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct MeixnerParams {
    beta: ExactScalar,
    c: ExactScalar,
}

impl MeixnerParams {
    /// Any `β`; `c` must avoid 0 and 1.
    pub fn new(beta: ExactScalar, c: ExactScalar) -> Result<Self> {
        if c.is_zero() || c.is_one() {
            return Err(Error::InvalidParameter(format!(
                "c must differ from 0 and 1, got {}",
                format_rational(&c)
            )));
        }
        Ok(MeixnerParams { beta, c })
    }

    pub fn beta(&self) -> &ExactScalar {
        &self.beta
    }

    pub fn c(&self) -> &ExactScalar {
        &self.c
    }

    /// `β > 0` and `0 < c < 1`.
    pub fn orthogonal_regime(&self) -> bool {
        self.beta.is_positive() && self.c.is_positive() && self.c < ExactScalar::one()
    }

    /// Same `c`, `β` shifted by `delta`.
    pub fn with_beta_shift(&self, delta: i64) -> Self {
        MeixnerParams {
            beta: &self.beta + int(delta),
            c: self.c.clone(),
        }
    }

    fn require_orthogonal(&self) -> Result<()> {
        if self.orthogonal_regime() {
            Ok(())
        } else {
            Err(Error::NotOrthogonalRegime(format!(
                "beta = {}, c = {}",
                format_rational(&self.beta),
                format_rational(&self.c)
            )))
        }
    }
}

/// `(1/n!) (1 - 1/c)^n`, shared by `m_n` and the Sobolev family.
pub fn leading_coefficient(n: usize, c: &ExactScalar) -> ExactScalar {
    let base = ExactScalar::one() - c.recip();
    num_traits::pow(base, n) / ExactScalar::from_integer(factorial(n))
}

/// Explicit representation
/// `m_n = Σ_k (β+k)_{n-k} / (k! (n-k)!) · (-x)_k · (1/c - 1)^k`.
pub fn meixner_poly(n: usize, p: &MeixnerParams) -> Polynomial {
    let ratio = p.c.recip() - ExactScalar::one();
    let mut falling = Polynomial::one(); // (-x)_k
    let mut ratio_pow = ExactScalar::one();
    let mut acc = Polynomial::zero();
    for k in 0..=n {
        let weight = pochhammer(&(&p.beta + int(k as i64)), n - k) * &ratio_pow
            / ExactScalar::from_integer(factorial(k) * factorial(n - k));
        acc = &acc + &falling.scale(&weight);
        falling = &falling * &Polynomial::linear(int(k as i64), int(-1));
        ratio_pow *= &ratio;
    }
    acc
}

/// Every `m_0..=m_n` from
/// `c(k+1) m_{k+1} = [x(c-1) + βc + k(c+1)] m_k - (k+β-1) m_{k-1}`.
pub fn meixner_polys(n: usize, p: &MeixnerParams) -> Vec<Polynomial> {
    let c = &p.c;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Polynomial::one());
    let mut prev = Polynomial::zero();
    for k in 0..n {
        let kk = int(k as i64);
        let cur = out.last().expect("seeded");
        let factor = Polynomial::linear(&p.beta * c + &kk * (c + int(1)), c - int(1));
        let next = (&factor * cur) - prev.scale(&(&kk + &p.beta - int(1)));
        let next = next.scale(&(c * (&kk + int(1))).recip());
        prev = cur.clone();
        out.push(next);
    }
    out
}

pub fn meixner_poly_recurrence(n: usize, p: &MeixnerParams) -> Polynomial {
    meixner_polys(n, p).pop().expect("non-empty")
}

/// Values `m_0(x)..=m_n(x)` at a single point, by the same recurrence.
pub fn meixner_values(n: usize, x: &ExactScalar, p: &MeixnerParams) -> Vec<ExactScalar> {
    let c = &p.c;
    let slope = c - int(1);
    let mut out = Vec::with_capacity(n + 1);
    out.push(ExactScalar::one());
    let mut prev = ExactScalar::zero();
    for k in 0..n {
        let kk = int(k as i64);
        let cur = out.last().expect("seeded").clone();
        let factor = x * &slope + &p.beta * c + &kk * (c + int(1));
        let next = (factor * &cur - &prev * (&kk + &p.beta - int(1))) / (c * (&kk + int(1)));
        prev = cur;
        out.push(next);
    }
    out
}

/// Double-precision counterpart of [`meixner_values`].
pub fn meixner_values_f64(n: usize, x: f64, beta: f64, c: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let cur = out[k];
        let next = ((x * (c - 1.0) + beta * c + kf * (c + 1.0)) * cur - (kf + beta - 1.0) * prev)
            / (c * (kf + 1.0));
        prev = cur;
        out.push(next);
    }
    out
}

/// Normalized factorial moment `(1-c)^β Σ_k k^(j) c^k (β)_k / k! = (β)_j (c/(1-c))^j`.
pub fn pascal_factorial_moment(j: usize, p: &MeixnerParams) -> Result<ExactScalar> {
    p.require_orthogonal()?;
    let ratio = &p.c / (ExactScalar::one() - &p.c);
    Ok(pochhammer(&p.beta, j) * num_traits::pow(ratio, j))
}

/// Normalized power moments `E[k^j]`, `j = 0..=n`.
pub fn pascal_power_moments(n: usize, p: &MeixnerParams) -> Result<Vec<ExactScalar>> {
    let falling = (0..=n)
        .map(|j| pascal_factorial_moment(j, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(stirling_convert(&falling))
}

/// Normalized inner product `(1-c)^β Σ_k f(k) g(k) c^k (β)_k / k!`, exact.
pub fn pascal_inner(f: &Polynomial, g: &Polynomial, p: &MeixnerParams) -> Result<ExactScalar> {
    p.require_orthogonal()?;
    let prod = f * g;
    let Some(deg) = prod.degree() else {
        return Ok(ExactScalar::zero());
    };
    let moments = pascal_power_moments(deg, p)?;
    Ok(prod
        .coeffs()
        .iter()
        .zip(&moments)
        .fold(ExactScalar::zero(), |acc, (a, m)| acc + a * m))
}

/// Normalized squared norm `(β)_n / (n! c^n)`.
pub fn meixner_norm(n: usize, p: &MeixnerParams) -> Result<ExactScalar> {
    p.require_orthogonal()?;
    Ok(pochhammer(&p.beta, n)
        / (ExactScalar::from_integer(factorial(n)) * num_traits::pow(p.c.clone(), n)))
}

/// Floating-point oracle for [`pascal_inner`]: direct partial summation of the
/// defining series, stopped once the weighted terms fall below `1e-30`.
pub fn pascal_inner_series_f64(f: &Polynomial, g: &Polynomial, p: &MeixnerParams) -> Result<f64> {
    p.require_orthogonal()?;
    let beta = to_f64(&p.beta);
    let c = to_f64(&p.c);
    let mut weight = (1.0 - c).powf(beta);
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let term = weight * f.eval_f64(kf) * g.eval_f64(kf);
        sum += term;
        let decreasing = c * (beta + kf) < kf + 1.0;
        if decreasing && term.abs() < 1e-30 && weight < 1e-30 {
            break;
        }
        weight *= c * (beta + kf) / (kf + 1.0);
        k += 1;
        if k > 1_000_000 {
            break;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::forward_difference;
    use crate::scalar::rat;

    fn params(beta: ExactScalar, c: ExactScalar) -> MeixnerParams {
        MeixnerParams::new(beta, c).unwrap()
    }

    #[test]
    fn rejects_degenerate_c() {
        assert!(MeixnerParams::new(int(1), int(0)).is_err());
        assert!(MeixnerParams::new(int(1), int(1)).is_err());
        let p = MeixnerParams::new(int(-2), int(3)).unwrap();
        assert!(!p.orthogonal_regime());
        assert!(params(int(2), rat(1, 2)).orthogonal_regime());
    }

    #[test]
    fn low_degree_examples() {
        let p = params(int(2), rat(1, 2));
        assert_eq!(meixner_poly(0, &p), Polynomial::one());
        assert_eq!(meixner_poly(1, &p), Polynomial::linear(int(2), int(-1)));
        assert_eq!(meixner_poly_recurrence(1, &p), Polynomial::linear(int(2), int(-1)));
        let q = params(int(1), rat(1, 2));
        let m2 = Polynomial::new(vec![int(1), rat(-5, 2), rat(1, 2)]);
        assert_eq!(meixner_poly(2, &q), m2);
        assert_eq!(meixner_poly_recurrence(2, &q), m2);
        let r = params(rat(3, 2), rat(1, 3));
        assert_eq!(meixner_poly(5, &r), meixner_poly_recurrence(5, &r));
    }

    #[test]
    fn leading_coefficients() {
        let p = params(rat(7, 3), rat(3, 4));
        for n in 0..10 {
            let m = meixner_poly(n, &p);
            assert_eq!(m.degree(), Some(n));
            assert_eq!(m.leading_coefficient().unwrap(), &leading_coefficient(n, p.c()));
        }
    }

    #[test]
    fn point_values_match_polynomials() {
        let p = params(rat(-1, 2), rat(3, 4));
        let x = rat(7, 3);
        let vals = meixner_values(9, &x, &p);
        let polys = meixner_polys(9, &p);
        for (v, m) in vals.iter().zip(&polys) {
            assert_eq!(v, &m.eval(&x));
        }
        let fl = meixner_values_f64(9, 7.0 / 3.0, -0.5, 0.75);
        for (a, b) in fl.iter().zip(&vals) {
            assert!((a - to_f64(b)).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn shift_and_difference_relations() {
        for (beta, c) in [(int(2), rat(1, 2)), (int(0), rat(1, 3)), (rat(-1, 2), rat(3, 4))] {
            let p = params(beta, c.clone());
            let lower = p.with_beta_shift(-1);
            let ms = meixner_polys(12, &p);
            let ls = meixner_polys(12, &lower);
            let factor = (&c - int(1)) / &c;
            for n in 1..=12 {
                let diff = &ms[n] - &ms[n - 1];
                assert_eq!(diff, ls[n]);
                assert_eq!(forward_difference(&diff), ms[n - 1].scale(&factor));
            }
        }
    }

    #[test]
    fn factorial_moment_examples() {
        let p = params(int(2), rat(1, 2));
        assert_eq!(pascal_factorial_moment(0, &p).unwrap(), int(1));
        assert_eq!(pascal_factorial_moment(1, &p).unwrap(), int(2));
        assert_eq!(pascal_factorial_moment(2, &p).unwrap(), int(6));
        assert!(pascal_factorial_moment(1, &params(int(-1), rat(1, 2))).is_err());
        assert!(pascal_factorial_moment(1, &params(int(1), int(2))).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let p = params(int(2), rat(1, 2));
        let one = Polynomial::one();
        assert_eq!(pascal_inner(&one, &one, &p).unwrap(), int(1));
        let m1 = meixner_poly(1, &p);
        let m2 = meixner_poly(2, &p);
        assert_eq!(pascal_inner(&m1, &m1, &p).unwrap(), int(4));
        assert_eq!(pascal_inner(&m1, &m2, &p).unwrap(), int(0));
        assert_eq!(pascal_inner(&Polynomial::zero(), &m2, &p).unwrap(), int(0));
        // E[k^2] for NB(2, 1/2) is Var + mean^2 = 4 + 4
        let x = Polynomial::x();
        assert_eq!(pascal_inner(&x, &x, &p).unwrap(), int(8));
    }

    #[test]
    fn norm_examples() {
        let p = params(int(2), rat(1, 2));
        assert_eq!(meixner_norm(0, &p).unwrap(), int(1));
        assert_eq!(meixner_norm(1, &p).unwrap(), int(4));
        assert_eq!(meixner_norm(3, &params(int(1), rat(1, 2))).unwrap(), int(8));
        assert!(meixner_norm(3, &params(int(0), rat(1, 2))).is_err());
    }

    #[test]
    fn orthogonality_small_grid() {
        let p = params(rat(7, 3), rat(1, 3));
        let ms = meixner_polys(8, &p);
        for i in 0..=8 {
            for j in 0..=8 {
                let v = pascal_inner(&ms[i], &ms[j], &p).unwrap();
                if i == j {
                    assert_eq!(v, meixner_norm(i, &p).unwrap());
                } else {
                    assert!(v.is_zero(), "({i},{j}) -> {v}");
                }
            }
        }
    }

    #[test]
    fn series_oracle_agrees_with_moments() {
        let p = params(int(2), rat(1, 2));
        let ms = meixner_polys(6, &p);
        for i in 0..=6 {
            for j in i..=6 {
                let exact = to_f64(&pascal_inner(&ms[i], &ms[j], &p).unwrap());
                let series = pascal_inner_series_f64(&ms[i], &ms[j], &p).unwrap();
                let scale = exact.abs().max(1.0);
                assert!((exact - series).abs() <= 1e-12 * scale, "({i},{j}): {exact} vs {series}");
            }
        }
    }
}

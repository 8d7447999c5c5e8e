//! Δ-Meixner–Sobolev polynomials `S_n`, orthogonal under
//! `(f, g)_S = (f, g) + λ (Δf, Δg)` on the Pascal measure, normalized to share
//! the leading coefficient of `m_n(x; β, c)`.
//!
//! `S_n` is assembled from the coherence coefficients: with `q_{n+1} = q_n / a_n`,
//! `q_n S_n = Σ_{k≤n} q_k m_k(x; β-1, c)`. Gram–Schmidt on the monomials is kept
//! as an independent oracle.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::meixner::{leading_coefficient, meixner_polys, meixner_values, pascal_inner, MeixnerParams};
use crate::poly::{forward_difference, Polynomial};
use crate::scalar::{format_rational, int, to_f64, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SobolevParams {
    beta: ExactScalar,
    c: ExactScalar,
    lambda: ExactScalar,
    eta: ExactScalar,
}

impl SobolevParams {
    /// Requires `β > 0`, `0 < c < 1`, `λ ≥ 0`. `λ = 0` gives back the
    /// classical Meixner family.
    pub fn new(beta: ExactScalar, c: ExactScalar, lambda: ExactScalar) -> Result<Self> {
        if !beta.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {}",
                format_rational(&beta)
            )));
        }
        if !c.is_positive() || c >= ExactScalar::one() {
            return Err(Error::InvalidParameter(format!(
                "c must lie in (0, 1), got {}",
                format_rational(&c)
            )));
        }
        if lambda.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "lambda must be nonnegative, got {}",
                format_rational(&lambda)
            )));
        }
        let gap = ExactScalar::one() - c.recip();
        let eta = ExactScalar::one() + &lambda * &gap * &gap;
        Ok(SobolevParams { beta, c, lambda, eta })
    }

    pub fn beta(&self) -> &ExactScalar {
        &self.beta
    }

    pub fn c(&self) -> &ExactScalar {
        &self.c
    }

    pub fn lambda(&self) -> &ExactScalar {
        &self.lambda
    }

    /// `η = 1 + λ (1 - 1/c)^2`.
    pub fn eta(&self) -> &ExactScalar {
        &self.eta
    }

    pub fn meixner(&self) -> MeixnerParams {
        MeixnerParams::new(self.beta.clone(), self.c.clone()).expect("c validated in (0,1)")
    }

    /// Parameters of the `m_k(x; β-1, c)` constituents.
    pub fn lowered(&self) -> MeixnerParams {
        self.meixner().with_beta_shift(-1)
    }
}

/// `a_0..=a_N` with `a_n = (n+β-1) / (n+β-1 + ηcn - cn a_{n-1})`, `a_0 = 1`.
pub fn a_sequence(n_max: usize, p: &SobolevParams) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ExactScalar::one());
    for n in 1..=n_max {
        let nn = int(n as i64);
        let top = &nn + &p.beta - int(1);
        let cn = &p.c * &nn;
        let den = &top + &p.eta * &cn - &cn * &out[n - 1];
        out.push(top / den);
    }
    out
}

/// Limit of `a_n`: the smaller root of `c z^2 - (1 + ηc) z + 1 = 0`.
pub fn a_limit(p: &SobolevParams) -> f64 {
    a_limit_f64(to_f64(&p.eta), to_f64(&p.c))
}

/// Same root from double inputs, in the cancellation-free form
/// `2 / (1 + ηc + sqrt((1+ηc)^2 - 4c))`.
pub fn a_limit_f64(eta: f64, c: f64) -> f64 {
    let s = 1.0 + eta * c;
    2.0 / (s + (s * s - 4.0 * c).sqrt())
}

/// `q_0..=q_N` from `(n+β-1) q_{n+1} = (n+β-1+ηcn) q_n - cn q_{n-1}`, `q_0 = q_1 = 1`.
pub fn q_sequence(n_max: usize, p: &SobolevParams) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::one(); (n_max + 1).min(2)];
    for n in 1..n_max {
        let nn = int(n as i64);
        let lead = &nn + &p.beta - int(1);
        let cn = &p.c * &nn;
        let next = ((&lead + &p.eta * &cn) * &out[n] - &cn * &out[n - 1]) / &lead;
        out.push(next);
    }
    out
}

/// `q_n` as polynomials in the indeterminate `η` (coefficients depend on `β`, `c`).
pub fn q_polynomials(n_max: usize, p: &SobolevParams) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(); (n_max + 1).min(2)];
    for n in 1..n_max {
        let nn = int(n as i64);
        let lead = &nn + &p.beta - int(1);
        let cn = &p.c * &nn;
        let factor = Polynomial::linear(lead.clone(), cn.clone());
        let next = (&factor * &out[n]) - out[n - 1].scale(&cn);
        out.push(next.scale(&lead.recip()));
    }
    out
}

/// `q_0 = 1`, `q_{n+1} = q_n / a_n`.
pub fn q_from_ratios(a: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::one()];
    for an in a {
        let next = out.last().expect("seeded") / an;
        out.push(next);
    }
    out
}

/// Memoized coefficient sequences for one parameter set.
#[derive(Clone, Debug)]
pub struct CoefficientTables {
    pub a: Vec<ExactScalar>,
    pub q: Vec<ExactScalar>,
    pub q_poly: Vec<Polynomial>,
}

impl CoefficientTables {
    pub fn build(n_max: usize, p: &SobolevParams) -> Self {
        CoefficientTables {
            a: a_sequence(n_max, p),
            q: q_sequence(n_max, p),
            q_poly: q_polynomials(n_max, p),
        }
    }
}

/// Normalized `(1-c)^β (f, g)_S`.
pub fn sobolev_inner(f: &Polynomial, g: &Polynomial, p: &SobolevParams) -> Result<ExactScalar> {
    let m = p.meixner();
    let plain = pascal_inner(f, g, &m)?;
    if p.lambda.is_zero() {
        return Ok(plain);
    }
    let diff = pascal_inner(&forward_difference(f), &forward_difference(g), &m)?;
    Ok(plain + &p.lambda * diff)
}

/// `S_0..=S_N` from the telescoped sums of `q_k m_k(x; β-1, c)`.
pub fn sobolev_polys(n_max: usize, p: &SobolevParams) -> Vec<Polynomial> {
    let q = q_sequence(n_max, p);
    let lowered = meixner_polys(n_max, &p.lowered());
    let mut running = Polynomial::zero();
    lowered
        .iter()
        .zip(&q)
        .map(|(m, qk)| {
            running = &running + &m.scale(qk);
            running.scale(&qk.recip())
        })
        .collect()
}

pub fn sobolev_poly(n: usize, p: &SobolevParams) -> Polynomial {
    sobolev_polys(n, p).pop().expect("non-empty")
}

/// `S_0..=S_N` from the coherence relation alone:
/// `S_n = m_n(x;β,c) - m_{n-1}(x;β,c) + a_{n-1} S_{n-1}`, `S_0 = 1`.
pub fn sobolev_polys_coherent(n_max: usize, p: &SobolevParams) -> Vec<Polynomial> {
    let ms = meixner_polys(n_max, &p.meixner());
    let a = a_sequence(n_max, p);
    let mut out = vec![Polynomial::one()];
    for n in 1..=n_max {
        let next = &(&ms[n] - &ms[n - 1]) + &out[n - 1].scale(&a[n - 1]);
        out.push(next);
    }
    out
}

/// `q_n S_n(x)` for `n = 0..=N` at one point, without building polynomials.
pub fn weighted_sobolev_values(n_max: usize, x: &ExactScalar, p: &SobolevParams) -> Vec<ExactScalar> {
    let q = q_sequence(n_max, p);
    let vals = meixner_values(n_max, x, &p.lowered());
    let mut running = ExactScalar::zero();
    vals.iter()
        .zip(&q)
        .map(|(v, qk)| {
            running += v * qk;
            running.clone()
        })
        .collect()
}

/// `S_n(x)` for `n = 0..=N` at one point.
pub fn sobolev_values(n_max: usize, x: &ExactScalar, p: &SobolevParams) -> Vec<ExactScalar> {
    let q = q_sequence(n_max, p);
    weighted_sobolev_values(n_max, x, p)
        .into_iter()
        .zip(&q)
        .map(|(w, qk)| w / qk)
        .collect()
}

/// Gram–Schmidt on `1, x, x^2, ...` under [`sobolev_inner`], each member
/// rescaled to the Meixner leading coefficient.
pub fn gram_schmidt_polys(n_max: usize, p: &SobolevParams) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<(Polynomial, ExactScalar)> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let xn = Polynomial::monomial(n);
        let mut v = xn.clone();
        for (s, norm) in &basis {
            let proj = sobolev_inner(&xn, s, p)? / norm;
            v = &v - &s.scale(&proj);
        }
        let norm = sobolev_inner(&v, &v, p)?;
        if norm.is_zero() {
            return Err(Error::DivisionByZero(format!("degenerate Gram–Schmidt step {n}")));
        }
        basis.push((v, norm));
    }
    Ok(basis
        .into_iter()
        .enumerate()
        .map(|(n, (v, _))| v.with_leading_coefficient(&leading_coefficient(n, &p.c)))
        .collect())
}

pub fn gram_schmidt_oracle(n: usize, p: &SobolevParams) -> Result<Polynomial> {
    Ok(gram_schmidt_polys(n, p)?.pop().expect("non-empty"))
}

/// Checks `m_n(x;β,c) - m_{n-1}(x;β,c) = S_n(x) - a_{n-1} S_{n-1}(x)` exactly.
pub fn telescoping_check(n: usize, p: &SobolevParams) -> bool {
    if n == 0 {
        return false;
    }
    let ms = meixner_polys(n, &p.meixner());
    let ss = sobolev_polys(n, p);
    let a = a_sequence(n - 1, p);
    let lhs = &ms[n] - &ms[n - 1];
    let rhs = &ss[n] - &ss[n - 1].scale(&a[n - 1]);
    lhs == rhs
}

//! Laguerre and Laguerre–Sobolev polynomials, the Laguerre–Sobolev generating
//! function `G_L`, and the `c ↑ 1` bridge from the Meixner side.
//!
//! Inner products are normalized by `Γ(α+1)`, so the moments `(α+1)_k` are
//! rational for rational `α`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::genfun::gm_closed;
use crate::hypergeom::{binom_pow, hyp1f1_series, SeriesOptions};
use crate::meixner::{meixner_values, MeixnerParams};
use crate::poly::Polynomial;
use crate::scalar::{factorial, format_rational, from_f64, int, pochhammer, to_f64, ExactScalar};
use crate::sobolev::{q_sequence, sobolev_values, SobolevParams};

#[derive(Clone, Debug, PartialEq)]
pub struct LaguerreSobolevParams {
    alpha: ExactScalar,
    lambda_t: ExactScalar,
}

impl LaguerreSobolevParams {
    /// `α > -1`, `λ̃ > 0`.
    pub fn new(alpha: ExactScalar, lambda_t: ExactScalar) -> Result<Self> {
        if alpha <= int(-1) {
            return Err(Error::InvalidParameter(format!(
                "alpha must exceed -1, got {}",
                format_rational(&alpha)
            )));
        }
        if !lambda_t.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "lambda_t must be positive, got {}",
                format_rational(&lambda_t)
            )));
        }
        Ok(LaguerreSobolevParams { alpha, lambda_t })
    }

    pub fn alpha(&self) -> &ExactScalar {
        &self.alpha
    }

    pub fn lambda_t(&self) -> &ExactScalar {
        &self.lambda_t
    }

    /// `ã = (λ̃ + 2 - sqrt(λ̃² + 4λ̃)) / 2`, evaluated as `2 / (λ̃ + 2 + sqrt(λ̃² + 4λ̃))`.
    pub fn a_tilde(&self) -> f64 {
        let l = to_f64(&self.lambda_t);
        2.0 / (l + 2.0 + (l * l + 4.0 * l).sqrt())
    }

    /// Meixner-side parameters `β = α + 1`, `λ = λ̃ / (1-c)^2` at a given `c`.
    pub fn meixner_side(&self, c: &ExactScalar) -> Result<SobolevParams> {
        let gap = ExactScalar::one() - c;
        if gap.is_zero() {
            return Err(Error::DivisionByZero("c = 1 in the Meixner-side substitution".into()));
        }
        SobolevParams::new(&self.alpha + int(1), c.clone(), &self.lambda_t / (&gap * &gap))
    }
}

/// `L_0..=L_N` from `(n+1) L_{n+1} = (2n+α+1-x) L_n - (n+α) L_{n-1}`.
pub fn laguerre_polys(n_max: usize, alpha: &ExactScalar) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one()];
    let mut prev = Polynomial::zero();
    for n in 0..n_max {
        let nn = int(n as i64);
        let cur = &out[n];
        let factor = Polynomial::linear(int(2) * &nn + alpha + int(1), int(-1));
        let next = (&factor * cur) - prev.scale(&(&nn + alpha));
        let next = next.scale(&(nn + int(1)).recip());
        prev = cur.clone();
        out.push(next);
    }
    out
}

pub fn laguerre_poly(n: usize, alpha: &ExactScalar) -> Polynomial {
    laguerre_polys(n, alpha).pop().expect("non-empty")
}

/// `L_0(x)..=L_N(x)`, exact.
pub fn laguerre_values(n_max: usize, x: &ExactScalar, alpha: &ExactScalar) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::one()];
    let mut prev = ExactScalar::zero();
    for n in 0..n_max {
        let nn = int(n as i64);
        let cur = out[n].clone();
        let next = ((int(2) * &nn + alpha + int(1) - x) * &cur - (&nn + alpha) * &prev) / (nn + int(1));
        prev = cur;
        out.push(next);
    }
    out
}

/// `∫ f g x^α e^{-x} dx / Γ(α+1)`, from the moments `(α+1)_k`.
pub fn laguerre_inner(f: &Polynomial, g: &Polynomial, alpha: &ExactScalar) -> Result<ExactScalar> {
    if alpha <= &int(-1) {
        return Err(Error::InvalidParameter(format!(
            "alpha must exceed -1, got {}",
            format_rational(alpha)
        )));
    }
    let shifted = alpha + int(1);
    let mut moment = ExactScalar::one();
    let mut acc = ExactScalar::zero();
    for (k, coef) in (f * g).coeffs().iter().enumerate() {
        acc += coef * &moment;
        moment *= &shifted + int(k as i64);
    }
    Ok(acc)
}

/// Normalized `(f, g)_L + λ̃ (f', g')_L`.
pub fn laguerre_sobolev_inner(f: &Polynomial, g: &Polynomial, p: &LaguerreSobolevParams) -> Result<ExactScalar> {
    let plain = laguerre_inner(f, g, &p.alpha)?;
    let deriv = laguerre_inner(&f.derivative(), &g.derivative(), &p.alpha)?;
    Ok(plain + &p.lambda_t * deriv)
}

/// Laguerre–Sobolev polynomials in the Laguerre basis: row `n` holds
/// `s_{n,0..=n}` with `S_n^L = Σ_i s_{n,i} L_i^{(α)}` and `s_{n,n} = 1`.
#[derive(Clone, Debug)]
pub struct LaguerreSobolevBasis {
    pub rows: Vec<Vec<ExactScalar>>,
    pub alpha: ExactScalar,
}

impl LaguerreSobolevBasis {
    /// Monomial form of `S_n^L`.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        let ls = laguerre_polys(n, &self.alpha);
        self.rows[n]
            .iter()
            .zip(&ls)
            .fold(Polynomial::zero(), |acc, (s, l)| &acc + &l.scale(s))
    }

    /// `S_0^L(x)..=S_N^L(x)`.
    pub fn values(&self, x: &ExactScalar) -> Vec<ExactScalar> {
        let n_max = self.rows.len() - 1;
        let ls = laguerre_values(n_max, x, &self.alpha);
        self.rows
            .iter()
            .map(|row| row.iter().zip(&ls).fold(ExactScalar::zero(), |acc, (s, l)| acc + s * l))
            .collect()
    }
}

/// Gram–Schmidt on `L_0, L_1, ...` under the Laguerre–Sobolev product.
///
/// In this basis, with `h_i = (α+1)_i / i!` and tails `U_k = Σ_{i>k} u_i`
/// (from `L_i' = -Σ_{k<i} L_k`), the product reads
/// `(u, v) = Σ h_i u_i v_i + λ̃ Σ_k h_k U_k V_k`. Since `L_n` has tail 1 below
/// `n`, the projection of `L_n` on `S_j` does not depend on `n`, which keeps
/// the construction quadratic.
pub fn laguerre_sobolev_basis(n_max: usize, p: &LaguerreSobolevParams) -> LaguerreSobolevBasis {
    let h: Vec<ExactScalar> = (0..=n_max)
        .map(|i| pochhammer(&(&p.alpha + int(1)), i) / ExactScalar::from_integer(factorial(i)))
        .collect();
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(n_max + 1);
    // R_n = Σ_{j<n} μ_j S_j, kept as a dense coefficient vector
    let mut residual: Vec<ExactScalar> = Vec::new();
    for n in 0..=n_max {
        let mut row: Vec<ExactScalar> = residual.iter().map(|r| -r).collect();
        row.push(ExactScalar::one());

        let mut tails = vec![ExactScalar::zero(); n + 1];
        let mut running = ExactScalar::zero();
        for k in (0..n).rev() {
            running += &row[k + 1];
            tails[k] = running.clone();
        }
        let norm = (0..=n).fold(ExactScalar::zero(), |acc, i| {
            acc + &h[i] * (&row[i] * &row[i] + &p.lambda_t * &tails[i] * &tails[i])
        });
        let overlap = (0..n).fold(ExactScalar::zero(), |acc, k| acc + &h[k] * &tails[k]);
        let mu = &p.lambda_t * overlap / norm;

        residual.push(ExactScalar::zero());
        for (r, s) in residual.iter_mut().zip(&row) {
            *r += &mu * s;
        }
        rows.push(row);
    }
    LaguerreSobolevBasis {
        rows,
        alpha: p.alpha.clone(),
    }
}

/// Monomial `S_n^L`, leading coefficient `(-1)^n / n!`.
pub fn laguerre_sobolev_poly(n: usize, p: &LaguerreSobolevParams) -> Polynomial {
    laguerre_sobolev_basis(n, p).polynomial(n)
}

pub fn laguerre_sobolev_polys(n_max: usize, p: &LaguerreSobolevParams) -> Vec<Polynomial> {
    let basis = laguerre_sobolev_basis(n_max, p);
    (0..=n_max).map(|n| basis.polynomial(n)).collect()
}

/// `q^L_0..=q^L_N` from `(n+α) q_{n+1} = [n(λ̃+2) + α] q_n - n q_{n-1}`, `q_0 = q_1 = 1`.
pub fn ql_sequence(n_max: usize, p: &LaguerreSobolevParams) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::one(); (n_max + 1).min(2)];
    let slope = &p.lambda_t + int(2);
    for n in 1..n_max {
        let nn = int(n as i64);
        let next = ((&nn * &slope + &p.alpha) * &out[n] - &nn * &out[n - 1]) / (&nn + &p.alpha);
        out.push(next);
    }
    out
}

/// Closed form of `G_L(x, ω) = Σ q^L_n S^L_n(x) ω^n` for `|ω| < ã`.
///
/// For `α ≠ 0` the factor is `(1-ãω)^{-α/(1+ã)} (1-ω/ã)^{-αã/(1+ã)}`; both
/// exponents negative is what matches the series (the first Taylor
/// coefficient must be `1 + α - x`).
pub fn gl_closed(x: f64, omega: f64, p: &LaguerreSobolevParams) -> Result<f64> {
    let at = p.a_tilde();
    if omega.abs() >= at {
        return Err(Error::Region(format!("need |omega| < a~ = {at}, got omega = {omega}")));
    }
    let far = (-x * omega / at / (1.0 - omega / at)).exp();
    if p.alpha.is_zero() {
        let near = (-x * omega * at / (1.0 - omega * at)).exp();
        return Ok((near + at * far) / ((1.0 - omega) * (1.0 + at)));
    }
    let alpha = to_f64(&p.alpha);
    let arg = x * omega * (1.0 - at * at) / ((at - omega) * (1.0 - omega * at));
    let confluent = hyp1f1_series(alpha / (1.0 + at), alpha, arg, SeriesOptions::default())?.value;
    Ok(binom_pow(at * omega, alpha / (1.0 + at))?
        * binom_pow(omega / at, alpha * at / (1.0 + at))?
        * far
        * confluent
        / (1.0 - omega))
}

/// `Σ_{n≤N} q^L_n S^L_n(x) ω^n` with exact coefficients.
pub fn gl_truncated(x: f64, omega: f64, p: &LaguerreSobolevParams, n_max: usize) -> Result<f64> {
    let basis = laguerre_sobolev_basis(n_max, p);
    gl_partial_sum(&basis, &ql_sequence(n_max, p), x, omega)
}

/// Same partial sum over a prebuilt basis, for sweeps over `x` and `ω`.
pub fn gl_partial_sum(basis: &LaguerreSobolevBasis, q: &[ExactScalar], x: f64, omega: f64) -> Result<f64> {
    let vals = basis.values(&from_f64(x)?);
    Ok(vals
        .iter()
        .zip(q)
        .rev()
        .fold(0.0, |acc, (s, qn)| acc * omega + to_f64(&(s * qn))))
}

/// `c = 1 - 2^-k` for `k = k_min..=k_max`.
pub fn c_sweep(k_min: u32, k_max: u32) -> Vec<ExactScalar> {
    (k_min..=k_max)
        .map(|k| ExactScalar::one() - ExactScalar::new(1.into(), num_traits::pow(2.into(), k as usize)))
        .collect()
}

/// `true` when each entry is below its predecessor (runs of exact zeros count
/// as non-increasing).
pub fn is_monotone_decreasing(errors: &[f64]) -> bool {
    errors
        .windows(2)
        .all(|w| w[1] < w[0] || (w[1] == 0.0 && w[0] == 0.0))
}

fn check_c(c: &ExactScalar) -> Result<()> {
    if !c.is_positive() || c >= &ExactScalar::one() {
        return Err(Error::InvalidParameter(format!("c must lie in (0, 1), got {}", format_rational(c))));
    }
    Ok(())
}

/// `|c^n m_n(x/(1-c); α+1, c) - L_n^{(α)}(x)|` for each `c`, computed exactly.
pub fn meixner_laguerre_limit_check(
    n: usize,
    x: &ExactScalar,
    alpha: &ExactScalar,
    c_seq: &[ExactScalar],
) -> Result<Vec<f64>> {
    let target = laguerre_values(n, x, alpha).pop().expect("non-empty");
    c_seq
        .iter()
        .map(|c| {
            check_c(c)?;
            let mp = MeixnerParams::new(alpha + int(1), c.clone())?;
            let scaled_x = x / (ExactScalar::one() - c);
            let m = meixner_values(n, &scaled_x, &mp).pop().expect("non-empty");
            Ok(to_f64(&(num_traits::pow(c.clone(), n) * m - &target).abs()))
        })
        .collect()
}

/// `|c^n S_n(x/(1-c)) - S_n^L(x)|` under `β = α+1`, `λ = λ̃/(1-c)^2`.
pub fn sobolev_limit_check(
    n: usize,
    x: &ExactScalar,
    p: &LaguerreSobolevParams,
    c_seq: &[ExactScalar],
) -> Result<Vec<f64>> {
    let target = laguerre_sobolev_basis(n, p).values(x).pop().expect("non-empty");
    c_seq
        .iter()
        .map(|c| {
            check_c(c)?;
            let sp = p.meixner_side(c)?;
            let scaled_x = x / (ExactScalar::one() - c);
            let s = sobolev_values(n, &scaled_x, &sp).pop().expect("non-empty");
            Ok(to_f64(&(num_traits::pow(c.clone(), n) * s - &target).abs()))
        })
        .collect()
}

/// `|q_n(η) - q^L_n(λ̃)|` along the sweep.
pub fn q_limit_check(n: usize, p: &LaguerreSobolevParams, c_seq: &[ExactScalar]) -> Result<Vec<f64>> {
    let target = ql_sequence(n, p).pop().expect("non-empty");
    c_seq
        .iter()
        .map(|c| {
            check_c(c)?;
            let q = q_sequence(n, &p.meixner_side(c)?).pop().expect("non-empty");
            Ok(to_f64(&(q - &target).abs()))
        })
        .collect()
}

/// `|G_M(x/(1-c), cω, λ̃/(1-c)^2) - G_L(x, ω, λ̃)|` along the sweep, both closed
/// forms in doubles. For `α ≠ 0` the scaled point `x/(1-c)` must be an integer.
pub fn gm_gl_limit_check(x: f64, omega: f64, p: &LaguerreSobolevParams, c_seq: &[ExactScalar]) -> Result<Vec<f64>> {
    let target = gl_closed(x, omega, p)?;
    c_seq
        .iter()
        .map(|c| {
            check_c(c)?;
            let sp = p.meixner_side(c)?;
            let cf = to_f64(c);
            let gm = gm_closed(x / (1.0 - cf), cf * omega, &sp)?;
            Ok((gm - target).abs())
        })
        .collect()
}

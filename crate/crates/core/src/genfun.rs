//! Closed-form generating functions and their truncated-series comparators.
//!
//! * classical Meixner: `Σ m_n ω^n = (1 - ω/c)^x (1 - ω)^(-x-β)` for `|ω| < c < 1`;
//! * Sobolev, `β = 1`: `G_M = [γ (1 - ω/(ac))^x (1 - ω/a)^(-x) + δ (1 - aω)^x (1 - acω)^(-x)] / (1 - ω)`;
//! * Sobolev, `β ≠ 1`: the same outer factors times a terminating `2F1` in `x`;
//! * the auxiliary `F(ω) = Σ q_n (β-1)_n ω^n / n!`.
//!
//! Here `G_M(x, ω) = Σ q_n S_n(x) ω^n` and `a`, `γ`, `δ` come from [`gf_constants`].
//! Closed forms are evaluated in doubles. The `*_taylor` functions expand the
//! same closed forms as power series in rounded rationals, to check them
//! coefficient by coefficient against `q_n S_n(x)`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{binom_pow, hyp2f1_terminating};
use crate::meixner::{meixner_polys, meixner_values, MeixnerParams};
use crate::poly::Polynomial;
use crate::scalar::{factorial, from_f64, int, pochhammer, sqrt_to_digits, to_f64, ExactScalar, GUARD_DIGITS};
use crate::series::{Precision, TruncatedSeries};
use crate::sobolev::{a_limit, q_sequence, sobolev_polys_coherent, weighted_sobolev_values, SobolevParams};

/// Default truncation order of the series comparators.
pub const DEFAULT_TRUNCATION: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GFConstants {
    pub a: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// `a` (smaller root of `c z^2 - (1+ηc) z + 1`), `γ = (a - a²c)/(1 - a²c)`,
/// `δ = (1 - a)/(1 - a²c)`.
pub fn gf_constants(p: &SobolevParams) -> GFConstants {
    let a = a_limit(p);
    let c = to_f64(p.c());
    let den = 1.0 - a * a * c;
    GFConstants {
        a,
        gamma: (a - a * a * c) / den,
        delta: (1.0 - a) / den,
    }
}

/// [`GFConstants`] as rationals: exact when the discriminant is a rational
/// square (for instance `λ = 0`), otherwise rounded to the carried precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactConstants {
    pub a: ExactScalar,
    pub gamma: ExactScalar,
    pub delta: ExactScalar,
    pub precision: Precision,
}

pub fn gf_constants_rational(p: &SobolevParams, digits: u32) -> Result<ExactConstants> {
    let c = p.c();
    let s = ExactScalar::one() + p.eta() * c;
    let disc = &s * &s - int(4) * c;
    let carried = digits + GUARD_DIGITS;
    let root = sqrt_to_digits(&disc, carried + 10)?;
    let precision = if &root * &root == disc {
        Precision::Exact
    } else {
        Precision::Digits(carried)
    };
    let a = precision.round(int(2) / (s + root));
    let den = ExactScalar::one() - &a * &a * c;
    let gamma = precision.round((&a - &a * &a * c) / &den);
    let delta = precision.round((ExactScalar::one() - &a) / &den);
    Ok(ExactConstants { a, gamma, delta, precision })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesComparison {
    pub closed: f64,
    pub truncated: f64,
    /// Truncation order of the partial sum.
    pub n: usize,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

impl SeriesComparison {
    pub fn new(closed: f64, truncated: f64, n: usize) -> Self {
        let abs_gap = (closed - truncated).abs();
        let rel_gap = if closed == 0.0 { abs_gap } else { abs_gap / closed.abs() };
        SeriesComparison {
            closed,
            truncated,
            n,
            abs_gap,
            rel_gap,
        }
    }
}

fn sum_power_series(values: &[ExactScalar], omega: f64) -> f64 {
    values
        .iter()
        .rev()
        .fold(0.0, |acc, v| acc * omega + to_f64(v))
}

fn meixner_region(omega: f64, p: &MeixnerParams) -> Result<f64> {
    let c = to_f64(p.c());
    if !(p.c().is_positive() && p.c() < &ExactScalar::one()) || omega.abs() >= c {
        return Err(Error::Region(format!("need |omega| < c < 1, got omega = {omega}, c = {c}")));
    }
    Ok(c)
}

/// `(1 - ω/c)^x (1 - ω)^(-x-β)`.
pub fn meixner_gf_closed(x: f64, omega: f64, p: &MeixnerParams) -> Result<f64> {
    let c = meixner_region(omega, p)?;
    Ok((1.0 - omega / c).powf(x) * (1.0 - omega).powf(-x - to_f64(p.beta())))
}

/// `Σ_{n≤N} m_n(x) ω^n` with `m_n(x)` evaluated exactly.
pub fn meixner_gf_truncated(x: f64, omega: f64, p: &MeixnerParams, n_max: usize) -> Result<f64> {
    let vals = meixner_values(n_max, &from_f64(x)?, p);
    Ok(sum_power_series(&vals, omega))
}

pub fn meixner_gf_compare(x: f64, omega: f64, p: &MeixnerParams, n_max: usize) -> Result<SeriesComparison> {
    let closed = meixner_gf_closed(x, omega, p)?;
    let truncated = meixner_gf_truncated(x, omega, p, n_max)?;
    Ok(SeriesComparison::new(closed, truncated, n_max))
}

/// `Σ_{n≤N} q_n S_n(x) ω^n`, every `q_n S_n(x)` exact before rounding to double.
pub fn gm_truncated(x: f64, omega: f64, p: &SobolevParams, n_max: usize) -> Result<f64> {
    let vals = weighted_sobolev_values(n_max, &from_f64(x)?, p);
    Ok(sum_power_series(&vals, omega))
}

fn sobolev_region(omega: f64, p: &SobolevParams) -> Result<GFConstants> {
    let k = gf_constants(p);
    let ac = k.a * to_f64(p.c());
    if omega.abs() >= ac {
        return Err(Error::Region(format!("need |omega| < a c = {ac}, got omega = {omega}")));
    }
    Ok(k)
}

/// `((1 - u) / (1 - v))^x` as one exponential, so large `x` cannot produce
/// `0 · ∞`.
fn power_ratio(u: f64, v: f64, x: f64) -> f64 {
    (x * ((-u).ln_1p() - (-v).ln_1p())).exp()
}

fn is_beta_one(p: &SobolevParams) -> bool {
    p.beta().is_one()
}

/// Closed form of `G_M` for `β = 1`, any real `x`.
pub fn gm_closed_beta1(x: f64, omega: f64, p: &SobolevParams) -> Result<f64> {
    if !is_beta_one(p) {
        return Err(Error::InvalidParameter("this closed form needs beta = 1".into()));
    }
    let GFConstants { a, gamma, delta } = sobolev_region(omega, p)?;
    let c = to_f64(p.c());
    let first = gamma * power_ratio(omega / (a * c), omega / a, x);
    let second = delta * power_ratio(omega * a, omega * c * a, x);
    Ok((first + second) / (1.0 - omega))
}

/// Argument of the terminating `2F1` in the `β ≠ 1` closed form,
/// `ω (c-1)(1 - a²c) / ((1 - caω)(ac - ω))`.
pub fn gm_hypergeometric_argument(omega: f64, a: f64, c: f64) -> f64 {
    omega * (c - 1.0) * (1.0 - a * a * c) / ((1.0 - c * a * omega) * (a * c - omega))
}

/// Closed form of `G_M` for `β ≠ 1` at a nonnegative integer `x`.
pub fn gm_closed_general(x: u64, omega: f64, p: &SobolevParams) -> Result<f64> {
    if is_beta_one(p) {
        return Err(Error::InvalidParameter("beta = 1 needs the dedicated closed form".into()));
    }
    let GFConstants { a, gamma, delta } = sobolev_region(omega, p)?;
    let c = to_f64(p.c());
    let bm1 = to_f64(p.beta()) - 1.0;
    let xf = x as f64;
    let prefactor = binom_pow(c * a * omega, bm1 * delta)?
        * binom_pow(omega / a, bm1 * gamma)?
        * power_ratio(omega / (a * c), omega / a, xf)
        / (1.0 - omega);
    let z = gm_hypergeometric_argument(omega, a, c);
    Ok(prefactor * hyp2f1_terminating(x as usize, bm1 * delta, bm1, z)?)
}

/// Dispatches to the closed form matching `β`. Non-integer `x` is only
/// accepted for `β = 1`.
pub fn gm_closed(x: f64, omega: f64, p: &SobolevParams) -> Result<f64> {
    if is_beta_one(p) {
        gm_closed_beta1(x, omega, p)
    } else if x >= 0.0 && x.fract() == 0.0 {
        gm_closed_general(x as u64, omega, p)
    } else {
        Err(Error::Domain(format!("closed form for beta != 1 needs integer x >= 0, got {x}")))
    }
}

pub fn gm_compare(x: f64, omega: f64, p: &SobolevParams, n_max: usize) -> Result<SeriesComparison> {
    let closed = gm_closed(x, omega, p)?;
    let truncated = gm_truncated(x, omega, p, n_max)?;
    Ok(SeriesComparison::new(closed, truncated, n_max))
}

fn require_beta_not_one(p: &SobolevParams) -> Result<()> {
    if is_beta_one(p) {
        Err(Error::InvalidParameter("F is only defined for beta != 1".into()))
    } else {
        Ok(())
    }
}

/// `F(ω) = (1 - ω/a)^(-(β-1)γ) (1 - ωca)^(-(β-1)δ)` for `|ω| < a`.
pub fn f_closed(omega: f64, p: &SobolevParams) -> Result<f64> {
    require_beta_not_one(p)?;
    let GFConstants { a, gamma, delta } = gf_constants(p);
    if omega.abs() >= a {
        return Err(Error::Region(format!("need |omega| < a = {a}, got omega = {omega}")));
    }
    let bm1 = to_f64(p.beta()) - 1.0;
    let c = to_f64(p.c());
    Ok(binom_pow(omega / a, bm1 * gamma)? * binom_pow(omega * c * a, bm1 * delta)?)
}

/// Three views of the Taylor coefficients `h_n` of `F`.
#[derive(Clone, Debug)]
pub struct FCoefficients {
    /// `q_n (β-1)_n / n!`, exact.
    pub from_q: Vec<ExactScalar>,
    /// `(n+1) h_{n+1} = [n(1+ηc) + β-1] h_n - c(n+β-2) h_{n-1}`, `h_0 = 1`, `h_1 = β-1`; exact.
    pub recurrence: Vec<ExactScalar>,
    /// Convolution of the two binomial series of the closed form.
    pub closed_form: Vec<ExactScalar>,
    pub precision: Precision,
}

pub fn f_coefficients(n_max: usize, p: &SobolevParams, digits: u32) -> Result<FCoefficients> {
    require_beta_not_one(p)?;
    let bm1 = p.beta() - int(1);
    let q = q_sequence(n_max, p);
    let from_q = q
        .iter()
        .enumerate()
        .map(|(n, qn)| qn * pochhammer(&bm1, n) / ExactScalar::from_integer(factorial(n)))
        .collect();

    let one_plus_eta_c = ExactScalar::one() + p.eta() * p.c();
    let mut recurrence = vec![ExactScalar::one()];
    if n_max >= 1 {
        recurrence.push(bm1.clone());
    }
    for n in 1..n_max {
        let nn = int(n as i64);
        let next = ((&nn * &one_plus_eta_c + &bm1) * &recurrence[n]
            - p.c() * (&nn + &bm1 - int(1)) * &recurrence[n - 1])
            / (&nn + int(1));
        recurrence.push(next);
    }

    let k = gf_constants_rational(p, digits)?;
    let prec = k.precision;
    let first = TruncatedSeries::binomial(&k.a.recip(), &prec.round(&bm1 * &k.gamma), n_max, prec);
    let second = TruncatedSeries::binomial(&prec.round(p.c() * &k.a), &prec.round(&bm1 * &k.delta), n_max, prec);
    let closed_form = first.mul(&second, prec).into_coeffs();
    Ok(FCoefficients {
        from_q,
        recurrence,
        closed_form,
        precision: prec,
    })
}

/// `(ω₁, ω₂) = ((c-1) a ω / (1 - caω), (c-1) ω / (c (a - ω)))`.
pub fn omega_substitutions(omega: f64, p: &SobolevParams) -> Result<(f64, f64)> {
    let a = a_limit(p);
    let c = to_f64(p.c());
    let d1 = 1.0 - c * a * omega;
    let d2 = c * (a - omega);
    if d1 == 0.0 || d2 == 0.0 {
        return Err(Error::DivisionByZero(format!("omega substitution pole at omega = {omega}")));
    }
    Ok(((c - 1.0) * a * omega / d1, (c - 1.0) * omega / d2))
}

/// Exact check of `q_n S_n(x) = Σ_{k≤n} q_k m_k(x; β-1, c)` with `S_n` built
/// from the coherence relation rather than from the sum itself.
pub fn proposition_serie_check(n: usize, p: &SobolevParams) -> bool {
    let s = sobolev_polys_coherent(n, p);
    let q = q_sequence(n, p);
    let lowered = meixner_polys(n, &p.lowered());
    let rhs = lowered
        .iter()
        .zip(&q)
        .fold(Polynomial::zero(), |acc, (m, qk)| &acc + &m.scale(qk));
    s[n].scale(&q[n]) == rhs
}

/// Taylor coefficients (orders `0..=N`) of the `β = 1` closed form at a
/// rational `x`.
pub fn gm_taylor_beta1(x: &ExactScalar, n_max: usize, p: &SobolevParams, digits: u32) -> Result<Vec<ExactScalar>> {
    if !is_beta_one(p) {
        return Err(Error::InvalidParameter("this closed form needs beta = 1".into()));
    }
    let k = gf_constants_rational(p, digits)?;
    let prec = k.precision;
    let c = p.c();
    let ac = prec.round(&k.a * c);
    let neg_x = -x;
    let first = TruncatedSeries::binomial(&prec.round(ac.recip()), &neg_x, n_max, prec)
        .mul(&TruncatedSeries::binomial(&prec.round(k.a.recip()), x, n_max, prec), prec)
        .scale(&k.gamma, prec);
    let second = TruncatedSeries::binomial(&k.a, &neg_x, n_max, prec)
        .mul(&TruncatedSeries::binomial(&ac, x, n_max, prec), prec)
        .scale(&k.delta, prec);
    let geometric = TruncatedSeries::binomial(&ExactScalar::one(), &ExactScalar::one(), n_max, prec);
    Ok(geometric.mul(&first.add(&second), prec).into_coeffs())
}

/// Taylor coefficients (orders `0..=N`) of the `β ≠ 1` closed form at a
/// nonnegative integer `x`.
pub fn gm_taylor_general(x: u64, n_max: usize, p: &SobolevParams, digits: u32) -> Result<Vec<ExactScalar>> {
    if is_beta_one(p) {
        return Err(Error::InvalidParameter("beta = 1 needs the dedicated closed form".into()));
    }
    let k = gf_constants_rational(p, digits)?;
    let prec = k.precision;
    let c = p.c();
    let bm1 = p.beta() - int(1);
    let xr = int(x as i64);
    let ac = prec.round(&k.a * c);
    let inv_a = prec.round(k.a.recip());
    let inv_ac = prec.round(ac.recip());
    let b_delta = prec.round(&bm1 * &k.delta);

    let mut outer = TruncatedSeries::binomial(&ExactScalar::one(), &ExactScalar::one(), n_max, prec);
    for (r, pw) in [
        (ac.clone(), b_delta.clone()),
        (inv_a.clone(), prec.round(&bm1 * &k.gamma)),
        (inv_ac.clone(), -&xr),
        (inv_a, xr.clone()),
    ] {
        outer = outer.mul(&TruncatedSeries::binomial(&r, &pw, n_max, prec), prec);
    }

    // Z(ω) = K ω / ((1 - caω)(ac - ω)) with K = (c-1)(1 - a²c)
    let big_k = prec.round((c - int(1)) * (ExactScalar::one() - &k.a * &k.a * c));
    let z = TruncatedSeries::binomial(&ac, &ExactScalar::one(), n_max, prec)
        .mul(&TruncatedSeries::binomial(&inv_ac, &ExactScalar::one(), n_max, prec), prec)
        .scale(&prec.round(big_k * &inv_ac), prec)
        .shift_up();

    let mut weights = Vec::with_capacity(x as usize + 1);
    let mut w = ExactScalar::one();
    for j in 0..=x as usize {
        weights.push(w.clone());
        let jj = int(j as i64);
        let den = (&bm1 + &jj) * (&jj + int(1));
        if den.is_zero() {
            if j < x as usize {
                return Err(Error::Pole(to_f64(&bm1)));
            }
            break;
        }
        w = prec.round(w * (&jj - &xr) * (&b_delta + &jj) / den);
    }
    let hyper = z.compose_polynomial(&weights, prec);
    Ok(outer.mul(&hyper, prec).into_coeffs())
}

/// Largest relative gap `|u_n - v_n| / max(|v_n|, floor)` over two coefficient lists.
pub fn max_relative_gap(u: &[ExactScalar], v: &[ExactScalar], floor: f64) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| {
            let diff = to_f64(&(a - b).abs());
            let scale = to_f64(&b.abs()).max(floor);
            diff / scale
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sp(beta: ExactScalar, c: ExactScalar, lambda: ExactScalar) -> SobolevParams {
        SobolevParams::new(beta, c, lambda).unwrap()
    }

    #[test]
    fn constants_at_worked_point() {
        let k = gf_constants(&sp(int(1), rat(1, 2), int(1)));
        assert!((k.a - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!((k.gamma - 0.5).abs() < 1e-13);
        assert!((k.delta - 0.5).abs() < 1e-13);
        let flat = gf_constants(&sp(int(2), rat(1, 3), int(0)));
        assert_eq!((flat.a, flat.gamma, flat.delta), (1.0, 1.0, 0.0));
        for p in [sp(rat(5, 2), rat(2, 3), rat(1, 10)), sp(int(3), rat(1, 3), int(2))] {
            let k = gf_constants(&p);
            assert!((k.gamma + k.delta - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn rational_constants() {
        let exact = gf_constants_rational(&sp(int(2), rat(1, 2), int(0)), 30).unwrap();
        assert_eq!(exact.precision, Precision::Exact);
        assert_eq!((exact.a, exact.gamma, exact.delta), (int(1), int(1), int(0)));
        let hp = gf_constants_rational(&sp(int(1), rat(1, 2), int(1)), 30).unwrap();
        assert!(matches!(hp.precision, Precision::Digits(_)));
        let tiny = rat(1, 1_000_000_000_000_000_000) * rat(1, 1_000_000_000_000_000_000);
        assert!((&hp.gamma - rat(1, 2)).abs() < tiny);
        // a = 2 - sqrt(2) solves a^2 - 4a + 2 = 0
        assert!((&hp.a * &hp.a - int(4) * &hp.a + int(2)).abs() < tiny);
    }

    #[test]
    fn meixner_gf_examples() {
        let p = MeixnerParams::new(int(1), rat(1, 2)).unwrap();
        assert!((meixner_gf_closed(0.0, 0.1, &p).unwrap() - 1.0 / 0.9).abs() < 1e-15);
        assert_eq!(meixner_gf_closed(2.5, 0.0, &p).unwrap(), 1.0);
        let q = MeixnerParams::new(int(2), rat(1, 2)).unwrap();
        let cmp = meixner_gf_compare(3.0, 0.2, &q, 80).unwrap();
        assert!(cmp.abs_gap < 1e-10, "{cmp:?}");
        assert!(meixner_gf_closed(1.0, 0.6, &q).is_err());
    }

    #[test]
    fn truncated_structure() {
        let p = sp(int(2), rat(1, 2), int(1));
        assert_eq!(gm_truncated(3.0, 0.0, &p, 10).unwrap(), 1.0);
        let n0 = gm_truncated(3.0, 0.1, &p, 0).unwrap();
        let n1 = gm_truncated(3.0, 0.1, &p, 1).unwrap();
        // q_1 S_1(3) ω = m_1(3; 2, 1/2) ω = (2 - 3)·0.1
        assert!((n1 - n0 - (-0.1)).abs() < 1e-16);
    }

    #[test]
    fn beta_one_closed_form() {
        let p = sp(int(1), rat(1, 2), int(1));
        assert!((gm_closed_beta1(0.0, 0.1, &p).unwrap() - 1.0 / 0.9).abs() < 1e-14);
        let cmp = gm_compare(3.0, 0.1, &p, 80).unwrap();
        assert!(cmp.abs_gap < 1e-9, "{cmp:?}");
        let flat = sp(int(1), rat(1, 2), int(0));
        let m = MeixnerParams::new(int(1), rat(1, 2)).unwrap();
        let a = gm_closed_beta1(2.5, 0.2, &flat).unwrap();
        let b = meixner_gf_closed(2.5, 0.2, &m).unwrap();
        assert!((a - b).abs() < 1e-14);
        assert!(gm_closed_beta1(1.0, 0.1, &sp(int(2), rat(1, 2), int(1))).is_err());
        assert!(gm_closed_beta1(1.0, 0.4, &p).is_err());
    }

    #[test]
    fn general_closed_form() {
        let p = sp(int(2), rat(1, 2), int(1));
        let k = gf_constants(&p);
        let x0 = gm_closed_general(0, 0.1, &p).unwrap();
        let expected = binom_pow(0.5 * k.a * 0.1, k.delta).unwrap() * binom_pow(0.1 / k.a, k.gamma).unwrap() / 0.9;
        assert!((x0 - expected).abs() < 1e-15);
        let cmp = gm_compare(3.0, 0.1, &p, 80).unwrap();
        assert!(cmp.abs_gap < 1e-9, "{cmp:?}");
        let flat = sp(rat(5, 2), rat(1, 2), int(0));
        let m = MeixnerParams::new(rat(5, 2), rat(1, 2)).unwrap();
        let a = gm_closed_general(4, 0.2, &flat).unwrap();
        assert!((a - meixner_gf_closed(4.0, 0.2, &m).unwrap()).abs() < 1e-12);
        assert!(gm_closed(1.5, 0.1, &p).is_err());
        assert!(gm_closed_general(1, 0.1, &sp(int(1), rat(1, 2), int(1))).is_err());
    }

    #[test]
    fn f_examples() {
        let p = sp(int(2), rat(1, 2), int(1));
        assert_eq!(f_closed(0.0, &p).unwrap(), 1.0);
        let fc = f_coefficients(12, &p, 30).unwrap();
        assert_eq!(fc.from_q, q_sequence(12, &p));
        assert_eq!(fc.recurrence, fc.from_q);
        assert!(max_relative_gap(&fc.closed_form, &fc.from_q, 1e-300) < 1e-25);
        let flat = sp(rat(7, 2), rat(1, 3), int(0));
        let fc = f_coefficients(10, &flat, 30).unwrap();
        assert_eq!(fc.precision, Precision::Exact);
        assert_eq!(fc.closed_form, fc.from_q);
        let w = 0.3;
        assert!((f_closed(w, &flat).unwrap() - (1.0 - w).powf(-2.5)).abs() < 1e-14);
        assert!(f_closed(0.1, &sp(int(1), rat(1, 2), int(1))).is_err());
        assert!(f_coefficients(3, &sp(int(1), rat(1, 2), int(1)), 30).is_err());
    }

    #[test]
    fn omega_substitution_identity() {
        let p = sp(int(2), rat(1, 2), int(1));
        assert_eq!(omega_substitutions(0.0, &p).unwrap(), (0.0, 0.0));
        let k = gf_constants(&p);
        for w in [-0.05, 0.05, 0.1, 0.25 * k.a * 0.5] {
            let (w1, w2) = omega_substitutions(w, &p).unwrap();
            let lhs = (w2 - w1) / (1.0 + w2);
            let rhs = gm_hypergeometric_argument(w, k.a, 0.5);
            assert!((lhs - rhs).abs() < 1e-13);
            assert!(w2.abs() < 1.0);
        }
    }

    #[test]
    fn proposition_examples() {
        let p = sp(int(2), rat(1, 2), int(1));
        for n in 0..=6 {
            assert!(proposition_serie_check(n, &p));
        }
    }

    #[test]
    fn taylor_streams_match_weighted_values() {
        let p1 = sp(int(1), rat(1, 2), int(1));
        for x in [int(0), int(2), rat(3, 2)] {
            let t = gm_taylor_beta1(&x, 10, &p1, 30).unwrap();
            let w = weighted_sobolev_values(10, &x, &p1);
            assert!(max_relative_gap(&t, &w, 1.0) < 1e-22, "x = {x}");
        }
        let p2 = sp(int(2), rat(1, 2), int(1));
        for x in [0u64, 1, 3] {
            let t = gm_taylor_general(x, 10, &p2, 30).unwrap();
            let w = weighted_sobolev_values(10, &int(x as i64), &p2);
            assert!(max_relative_gap(&t, &w, 1.0) < 1e-22, "x = {x}");
        }
        let flat = sp(rat(5, 2), rat(1, 3), int(0));
        let t = gm_taylor_general(2, 8, &flat, 30).unwrap();
        assert_eq!(t, weighted_sobolev_values(8, &int(2), &flat));
    }
}

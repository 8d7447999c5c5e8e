//! Real-argument hypergeometric kernels: terminating and convergent `2F1`,
//! `1F1`, principal binomial powers, and the two transformation identities
//! the Sobolev generating function relies on.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    /// Stop once `|term| <= tol * |partial sum|`.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-16,
            max_terms: 10_000,
        }
    }
}

impl SeriesOptions {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 || max_terms == 0 {
            return Err(Error::InvalidParameter(format!(
                "series options need tol > 0 and max_terms >= 1 (tol = {tol}, max_terms = {max_terms})"
            )));
        }
        Ok(SeriesOptions { tol, max_terms })
    }
}

/// A summed series together with the number of terms that went into it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
}

/// `Some(m)` when `v` is the nonpositive integer `-m`.
pub fn nonpositive_integer(v: f64) -> Option<usize> {
    (v <= 0.0 && v.fract() == 0.0 && v > -1e15).then(|| (-v) as usize)
}

/// `Σ_{k=0}^{m} (-m)_k (b)_k / (c0)_k z^k / k!`, summed left to right.
pub fn hyp2f1_terminating(m: usize, b: f64, c0: f64, z: f64) -> Result<f64> {
    if let Some(j) = nonpositive_integer(c0) {
        if j < m {
            return Err(Error::Pole(c0));
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..m {
        let kf = k as f64;
        term *= (kf - m as f64) * (b + kf) / ((c0 + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

fn check_denominator(c0: f64) -> Result<()> {
    if nonpositive_integer(c0).is_some() {
        Err(Error::Pole(c0))
    } else {
        Ok(())
    }
}

/// Gauss `2F1(a, b; c0; z)` by direct summation for `|z| < 1`. A nonpositive
/// integer top parameter is routed to the terminating sum for any `z`.
pub fn hyp2f1_series(a: f64, b: f64, c0: f64, z: f64, opts: SeriesOptions) -> Result<SeriesValue> {
    for top in [a, b] {
        if let Some(m) = nonpositive_integer(top) {
            let other = if top == a { b } else { a };
            let value = hyp2f1_terminating(m, other, c0, z)?;
            return Ok(SeriesValue { value, terms: m + 1 });
        }
    }
    check_denominator(c0)?;
    if z.abs() >= 1.0 {
        return Err(Error::Region(format!("2F1 series needs |z| < 1, got z = {z}")));
    }
    sum_series(opts, |k| (a + k) * (b + k) / ((c0 + k) * (k + 1.0)) * z)
}

/// Kummer `1F1(a; c0; z)` by direct summation.
pub fn hyp1f1_series(a: f64, c0: f64, z: f64, opts: SeriesOptions) -> Result<SeriesValue> {
    check_denominator(c0)?;
    sum_series(opts, |k| (a + k) / ((c0 + k) * (k + 1.0)) * z)
}

/// Sums `Σ t_k` with `t_0 = 1`, `t_{k+1} = t_k * ratio(k)`.
fn sum_series(opts: SeriesOptions, ratio: impl Fn(f64) -> f64) -> Result<SeriesValue> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..opts.max_terms {
        term *= ratio(k as f64);
        sum += term;
        if term == 0.0 || term.abs() <= opts.tol * sum.abs() {
            return Ok(SeriesValue { value: sum, terms: k + 2 });
        }
        if !sum.is_finite() {
            return Err(Error::NonFinite(sum.to_string()));
        }
    }
    Err(Error::NonConvergence {
        max_terms: opts.max_terms,
    })
}

/// Principal branch of `(1 - z)^(-p)`.
pub fn binom_pow(z: f64, p: f64) -> Result<f64> {
    let base = 1.0 - z;
    let integral = p.fract() == 0.0 && p.abs() < i32::MAX as f64;
    if base > 0.0 {
        Ok(base.powf(-p))
    } else if integral && !(base == 0.0 && p > 0.0) {
        Ok(base.powi(-(p as i32)))
    } else {
        Err(Error::Branch(format!("(1 - z)^(-p) with z = {z}, p = {p}")))
    }
}

/// `Σ_j (p)_j z^j / j!`, the binomial series behind [`binom_pow`].
pub fn binom_series(z: f64, p: f64, opts: SeriesOptions) -> Result<SeriesValue> {
    if z.abs() >= 1.0 {
        return Err(Error::Region(format!("binomial series needs |z| < 1, got z = {z}")));
    }
    sum_series(opts, |k| (p + k) / (k + 1.0) * z)
}

/// Both sides of `2F1(a,b;c;z) = (1-z)^(-b) 2F1(c-a, b; c; z/(z-1))`.
pub fn pfaff_kummer_check(a: f64, b: f64, c0: f64, z: f64, opts: SeriesOptions) -> Result<(f64, f64)> {
    if z.abs() >= 1.0 {
        return Err(Error::Region(format!("Pfaff–Kummer needs |z| < 1, got z = {z}")));
    }
    let lhs = hyp2f1_series(a, b, c0, z, opts)?.value;
    let rhs = binom_pow(z, b)? * hyp2f1_series(c0 - a, b, c0, z / (z - 1.0), opts)?.value;
    Ok((lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HansenCheck {
    pub left: f64,
    pub right: f64,
    /// Terms of the outer sum actually used on the left.
    pub terms: usize,
}

/// Both sides of the bilinear sum
/// `Σ_k (a)_k (b)_k / (c)_k y^k / k! · 2F1(c-a, c-b; c+k; z) = (1-z)^(a+b-c) 2F1(a, b; c; z + y - zy)`,
/// the left one truncated after at most `max_outer` terms (earlier if the
/// outer coefficients vanish or fall below `opts.tol`).
pub fn hansen_check(
    a: f64,
    b: f64,
    c0: f64,
    y: f64,
    z: f64,
    max_outer: usize,
    opts: SeriesOptions,
) -> Result<HansenCheck> {
    let w = z + y - z * y;
    if z.abs() >= 1.0 || w.abs() >= 1.0 {
        return Err(Error::Region(format!("bilinear sum needs |z| < 1 and |z+y-zy| < 1 (z = {z}, y = {y})")));
    }
    let right = binom_pow(z, -(a + b - c0))? * hyp2f1_series(a, b, c0, w, opts)?.value;
    let mut coef = 1.0f64;
    let mut left = 0.0f64;
    let mut terms = 0;
    for k in 0..max_outer {
        let kf = k as f64;
        let inner = hyp2f1_series(c0 - a, c0 - b, c0 + kf, z, opts)?.value;
        let term = coef * inner;
        left += term;
        terms = k + 1;
        coef *= (a + kf) * (b + kf) / ((c0 + kf) * (kf + 1.0)) * y;
        if coef == 0.0 || (term.abs() <= opts.tol * left.abs() && coef.abs() <= opts.tol * left.abs()) {
            return Ok(HansenCheck { left, right, terms });
        }
    }
    if coef.abs() > 1e-12 * left.abs().max(1.0) {
        return Err(Error::NonConvergence { max_terms: max_outer });
    }
    Ok(HansenCheck { left, right, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn terminating_examples() {
        assert_eq!(hyp2f1_terminating(0, 0.3, 1.7, 0.9).unwrap(), 1.0);
        let (b, c0, z) = (0.3, 1.7, 0.4);
        assert!(close(hyp2f1_terminating(1, b, c0, z).unwrap(), 1.0 - b / c0 * z, 1e-16));
        // 1 - 1/2 + (-2)_2 (1)_2 / (2)_2 · (1/2)^2 / 2! = 7/12
        assert!(close(hyp2f1_terminating(2, 1.0, 2.0, 0.5).unwrap(), 7.0 / 12.0, 1e-15));
        assert_eq!(hyp2f1_terminating(3, 1.0, -1.0, 0.5), Err(Error::Pole(-1.0)));
        // a pole past the last term is harmless
        assert!(hyp2f1_terminating(2, 1.0, -2.0, 0.5).is_ok());
    }

    #[test]
    fn series_examples() {
        let o = SeriesOptions::default();
        assert_eq!(hyp2f1_series(0.3, 0.4, 1.2, 0.0, o).unwrap().value, 1.0);
        let geo = hyp2f1_series(1.0, 1.0, 1.0, 0.3, o).unwrap();
        assert!(close(geo.value, 1.0 / 0.7, 1e-15));
        assert!(geo.terms > 10);
        let t = hyp2f1_series(-3.0, 0.7, 1.9, 0.4, o).unwrap().value;
        assert!(close(t, hyp2f1_terminating(3, 0.7, 1.9, 0.4).unwrap(), 1e-15));
        assert_eq!(hyp2f1_series(0.5, 0.5, -2.0, 0.1, o), Err(Error::Pole(-2.0)));
        assert!(matches!(hyp2f1_series(0.5, 0.5, 1.0, 1.2, o), Err(Error::Region(_))));
        let slow = SeriesOptions::new(1e-16, 5).unwrap();
        assert!(matches!(hyp2f1_series(0.5, 0.5, 1.5, 0.9, slow), Err(Error::NonConvergence { .. })));
        assert!(SeriesOptions::new(0.0, 5).is_err());
        assert!(SeriesOptions::new(1e-3, 0).is_err());
    }

    #[test]
    fn confluent_examples() {
        let o = SeriesOptions::default();
        assert_eq!(hyp1f1_series(0.7, 1.3, 0.0, o).unwrap().value, 1.0);
        assert!(close(hyp1f1_series(0.7, 0.7, 1.0, o).unwrap().value, std::f64::consts::E, 1e-15));
        assert!(close(hyp1f1_series(1.0, 2.0, 1.0, o).unwrap().value, std::f64::consts::E - 1.0, 1e-15));
        assert!(hyp1f1_series(1.0, 0.0, 1.0, o).is_err());
    }

    #[test]
    fn binomial_examples() {
        let o = SeriesOptions::default();
        assert_eq!(binom_pow(0.0, 3.7).unwrap(), 1.0);
        assert!(close(binom_pow(0.5, 1.0).unwrap(), 2.0, 1e-16));
        let s = binom_series(0.3, 2.5, o).unwrap().value;
        assert!(close(binom_pow(0.3, 2.5).unwrap(), s, 1e-13));
        assert!(matches!(binom_pow(1.5, 0.5), Err(Error::Branch(_))));
        assert!(matches!(binom_pow(1.0, 2.0), Err(Error::Branch(_))));
        assert!(close(binom_pow(3.0, -2.0).unwrap(), 4.0, 1e-16));
        assert!(close(binom_pow(3.0, 1.0).unwrap(), -0.5, 1e-16));
    }

    #[test]
    fn pfaff_kummer_examples() {
        let o = SeriesOptions::default();
        assert_eq!(pfaff_kummer_check(0.2, 0.3, 1.1, 0.0, o).unwrap(), (1.0, 1.0));
        let (l, r) = pfaff_kummer_check(-3.0, 0.7, 1.9, 0.4, o).unwrap();
        assert!(close(l, r, 1e-12));
        let (l, r) = pfaff_kummer_check(0.5, 1.2, 2.3, -0.6, o).unwrap();
        assert!(close(l, r, 1e-12));
    }

    #[test]
    fn hansen_degenerations() {
        let o = SeriesOptions::default();
        let (a, b, c0) = (0.4, 0.9, 1.7);
        let y0 = hansen_check(a, b, c0, 0.0, 0.3, 200, o).unwrap();
        let euler = hyp2f1_series(c0 - a, c0 - b, c0, 0.3, o).unwrap().value;
        assert!(close(y0.left, euler, 1e-15));
        assert!(close(y0.left, y0.right, 1e-10));
        let z0 = hansen_check(a, b, c0, 0.35, 0.0, 400, o).unwrap();
        let direct = hyp2f1_series(a, b, c0, 0.35, o).unwrap().value;
        assert!(close(z0.right, direct, 1e-15));
        assert!(close(z0.left, z0.right, 1e-10));
        let gen = hansen_check(-4.0, 0.6, 1.3, -0.2, -0.15, 50, o).unwrap();
        assert_eq!(gen.terms, 5);
        assert!(close(gen.left, gen.right, 1e-10));
    }
}

//! Verification suites.
//!
//! Every check sets two independent routes to the same quantity against each
//! other: an exact comparison counts mismatches, a floating comparison records
//! the largest gap next to its tolerance. Suites group checks the way the CLI
//! exposes them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::{
    f_closed, f_coefficients, gf_constants, gm_closed, gm_closed_beta1, gm_closed_general, gm_hypergeometric_argument,
    gm_taylor_beta1, gm_taylor_general, gm_truncated, max_relative_gap, meixner_gf_closed, omega_substitutions,
    proposition_serie_check, DEFAULT_TRUNCATION,
};
use crate::hypergeom::{hansen_check, hyp2f1_series, hyp2f1_terminating, pfaff_kummer_check, SeriesOptions};
use crate::laguerre::{
    c_sweep, gl_closed, gl_partial_sum, gm_gl_limit_check, is_monotone_decreasing, laguerre_inner, laguerre_polys,
    laguerre_sobolev_basis, laguerre_sobolev_inner, meixner_laguerre_limit_check, ql_sequence, q_limit_check,
    sobolev_limit_check, LaguerreSobolevParams,
};
use crate::meixner::{meixner_poly, meixner_polys, pascal_inner, MeixnerParams};
use crate::poly::forward_difference;
use crate::scalar::{factorial, format_rational, int, pochhammer, rat, to_f64, working_digits, ExactScalar};
use crate::sobolev::{
    a_limit, a_sequence, gram_schmidt_polys, q_from_ratios, q_sequence, sobolev_inner, sobolev_polys,
    telescoping_check, weighted_sobolev_values, SobolevParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    #[serde(rename = "orthogonality")]
    Orthogonality,
    #[serde(rename = "recurrences")]
    Recurrences,
    #[serde(rename = "gf-beta1")]
    GfBeta1,
    #[serde(rename = "gf-general")]
    GfGeneral,
    #[serde(rename = "F-coeffs")]
    FCoeffs,
    #[serde(rename = "hypergeom-identities")]
    HypergeomIdentities,
    #[serde(rename = "laguerre")]
    Laguerre,
    #[serde(rename = "limits")]
    Limits,
    #[serde(rename = "all")]
    All,
}

impl Suite {
    /// Concrete suites in report order.
    pub const CONCRETE: [Suite; 8] = [
        Suite::Orthogonality,
        Suite::Recurrences,
        Suite::GfBeta1,
        Suite::GfGeneral,
        Suite::FCoeffs,
        Suite::HypergeomIdentities,
        Suite::Laguerre,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Recurrences => "recurrences",
            Suite::GfBeta1 => "gf-beta1",
            Suite::GfGeneral => "gf-general",
            Suite::FCoeffs => "F-coeffs",
            Suite::HypergeomIdentities => "hypergeom-identities",
            Suite::Laguerre => "laguerre",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified property.
///
/// `measured` is a mismatch count for exact checks (tolerance 0) and the
/// largest gap for floating ones.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub identity: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn exact(suite: Suite, name: String, identity: &str, mismatches: usize, detail: String) -> Check {
        Check {
            suite,
            name,
            identity: identity.to_string(),
            status: if mismatches == 0 { Status::Pass } else { Status::Fail },
            measured: mismatches as f64,
            tolerance: 0.0,
            detail,
        }
    }

    fn within(suite: Suite, name: String, identity: &str, measured: f64, tolerance: f64, detail: String) -> Check {
        let ok = measured.is_finite() && measured <= tolerance;
        Check {
            suite,
            name,
            identity: identity.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            tolerance,
            detail,
        }
    }

    fn failed(suite: Suite, name: String, identity: &str, err: &Error) -> Check {
        Check {
            suite,
            name,
            identity: identity.to_string(),
            status: Status::Fail,
            measured: f64::NAN,
            tolerance: 0.0,
            detail: err.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Tolerances of the floating checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Closed generating function against its truncated series (`G_M`, `G_L`).
    pub gf_gap: f64,
    pub gamma_delta: f64,
    pub hypergeometric_argument: f64,
    /// `λ = 0` Sobolev generating function against the classical one.
    pub lambda_zero_gf: f64,
    /// `β = 1 ± ε` general closed form against the `β = 1` one.
    pub beta_continuity: f64,
    pub beta_offset: f64,
    pub f_relative: f64,
    pub pfaff_kummer: f64,
    pub hansen: f64,
    pub terminating_consistency: f64,
    pub a_limit_gap: f64,
    pub quadratic_residual: f64,
    /// Final error of the Sobolev limit sweep.
    pub sobolev_limit_final: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            gf_gap: 1e-9,
            gamma_delta: 1e-13,
            hypergeometric_argument: 1e-13,
            lambda_zero_gf: 1e-12,
            beta_continuity: 1e-4,
            beta_offset: 1e-6,
            f_relative: 1e-10,
            pfaff_kummer: 1e-12,
            hansen: 1e-10,
            terminating_consistency: 1e-14,
            a_limit_gap: 1e-10,
            quadratic_residual: 1e-14,
            sobolev_limit_final: 1e-2,
        }
    }
}

/// Grids and knobs for all suites. [`Default`] is the reference grid.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub classical_grid: Vec<MeixnerParams>,
    /// Meixner parameters for the structural identities, `β` unrestricted.
    pub general_beta_grid: Vec<MeixnerParams>,
    pub sobolev_grid: Vec<SobolevParams>,
    pub gf_beta1_grid: Vec<SobolevParams>,
    pub gf_general_grid: Vec<SobolevParams>,
    pub f_grid: Vec<SobolevParams>,
    /// Parameter sets whose constellation feeds the bilinear `2F1` sum.
    pub hansen_grid: Vec<SobolevParams>,
    pub laguerre_grid: Vec<LaguerreSobolevParams>,
    /// Sample points of the generating-function suites.
    pub xs: Vec<u64>,
    /// Sample `ω`; a quarter of the convergence radius is appended per set.
    pub omegas: Vec<f64>,
    /// Overrides every degree bound of the exact suites.
    pub max_n: Option<usize>,
    pub truncation: usize,
    pub seed: u64,
    pub random_points: usize,
    pub digits: u32,
    pub tol: Tolerances,
}

fn mp(beta: ExactScalar, c: ExactScalar) -> MeixnerParams {
    MeixnerParams::new(beta, c).expect("grid c avoids 0 and 1")
}

fn sp(beta: ExactScalar, c: ExactScalar, lambda: ExactScalar) -> SobolevParams {
    SobolevParams::new(beta, c, lambda).expect("grid parameters are admissible")
}

fn lp(alpha: ExactScalar, lambda_t: ExactScalar) -> LaguerreSobolevParams {
    LaguerreSobolevParams::new(alpha, lambda_t).expect("grid parameters are admissible")
}

pub const DEFAULT_SEED: u64 = 20_240_917;

impl Default for VerifyConfig {
    fn default() -> Self {
        let general_beta_grid = [rat(-1, 2), int(0), rat(1, 2), int(1), int(2), rat(5, 2)]
            .into_iter()
            .flat_map(|b| [rat(1, 2), rat(2, 3), int(3)].into_iter().map(move |c| mp(b.clone(), c)))
            .collect();
        VerifyConfig {
            classical_grid: vec![
                mp(int(2), rat(1, 2)),
                mp(int(1), rat(1, 2)),
                mp(int(3), rat(1, 3)),
                mp(rat(5, 2), rat(2, 3)),
            ],
            general_beta_grid,
            sobolev_grid: vec![
                sp(int(2), rat(1, 2), int(1)),
                sp(int(1), rat(1, 2), int(1)),
                sp(int(3), rat(1, 3), int(2)),
                sp(rat(5, 2), rat(2, 3), rat(1, 10)),
            ],
            gf_beta1_grid: vec![sp(int(1), rat(1, 2), int(1))],
            gf_general_grid: vec![sp(int(2), rat(1, 2), int(1)), sp(rat(5, 2), rat(1, 2), int(1))],
            f_grid: vec![
                sp(int(2), rat(1, 2), int(1)),
                sp(rat(5, 2), rat(1, 2), int(1)),
                sp(int(3), rat(1, 3), int(2)),
                sp(rat(5, 2), rat(2, 3), rat(1, 10)),
            ],
            hansen_grid: vec![sp(int(2), rat(1, 2), int(1)), sp(rat(5, 2), rat(1, 2), int(1))],
            laguerre_grid: vec![lp(int(0), int(1)), lp(int(1), int(1)), lp(rat(1, 2), int(2))],
            xs: vec![0, 1, 2, 5],
            omegas: vec![-0.05, 0.05, 0.1],
            max_n: None,
            truncation: DEFAULT_TRUNCATION,
            seed: DEFAULT_SEED,
            random_points: 50,
            digits: working_digits(),
            tol: Tolerances::default(),
        }
    }
}

impl VerifyConfig {
    /// Runs every suite on one Sobolev parameter set. Grids tied to a `β`
    /// branch (`β = 1` or `β ≠ 1`) only take it when the branch matches.
    pub fn with_sobolev(mut self, p: SobolevParams) -> Self {
        self.classical_grid = vec![p.meixner()];
        self.general_beta_grid = vec![p.meixner()];
        self.sobolev_grid = vec![p.clone()];
        if p.beta().is_one() {
            self.gf_beta1_grid = vec![p];
        } else {
            self.gf_general_grid = vec![p.clone()];
            self.f_grid = vec![p.clone()];
            self.hansen_grid = vec![p];
        }
        self
    }

    pub fn with_laguerre(mut self, p: LaguerreSobolevParams) -> Self {
        self.laguerre_grid = vec![p];
        self
    }

    fn n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    fn omegas_with(&self, radius: f64) -> Vec<f64> {
        let mut out = self.omegas.clone();
        out.push(0.25 * radius);
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub digits: u32,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suites: Vec<Suite>, cfg: &VerifyConfig, checks: Vec<Check>) -> Self {
        let failures = checks.iter().filter(|c| !c.passed()).count();
        Report {
            suites,
            seed: cfg.seed,
            digits: cfg.digits,
            passed: failures == 0,
            total: checks.len(),
            failures,
            checks,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::Orthogonality => [classical_orthogonality(cfg), sobolev_orthogonality(cfg)].concat(),
        Suite::Recurrences => [meixner_relations(cfg), coherence_identities(cfg), coefficient_sequences(cfg)].concat(),
        Suite::GfBeta1 => gf_beta1(cfg),
        Suite::GfGeneral => gf_general(cfg),
        Suite::FCoeffs => f_coefficient_checks(cfg),
        Suite::HypergeomIdentities => hypergeom_identities(cfg),
        Suite::Laguerre => laguerre_checks(cfg),
        Suite::Limits => limit_checks(cfg),
        Suite::All => Suite::CONCRETE.iter().flat_map(|&s| run_suite(s, cfg)).collect(),
    }
}

pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Report {
    let mut expanded: Vec<Suite> = Vec::new();
    for s in suites.iter().flat_map(|s| s.expand()) {
        if !expanded.contains(&s) {
            expanded.push(s);
        }
    }
    let checks = expanded.iter().flat_map(|&s| run_suite(s, cfg)).collect();
    Report::new(expanded, cfg, checks)
}

fn fr(x: &ExactScalar) -> String {
    format_rational(x)
}

fn mlabel(p: &MeixnerParams) -> String {
    format!("beta={},c={}", fr(p.beta()), fr(p.c()))
}

fn slabel(p: &SobolevParams) -> String {
    format!("beta={},c={},lambda={}", fr(p.beta()), fr(p.c()), fr(p.lambda()))
}

fn llabel(p: &LaguerreSobolevParams) -> String {
    format!("alpha={},lambda_t={}", fr(p.alpha()), fr(p.lambda_t()))
}

/// Largest gap `|u - v| / max(1, |v|)` with the location of the worst point.
#[derive(Default)]
struct Worst {
    gap: f64,
    at: String,
}

impl Worst {
    fn record(&mut self, u: f64, v: f64, at: impl FnOnce() -> String) {
        let gap = (u - v).abs() / v.abs().max(1.0);
        if gap > self.gap || gap.is_nan() {
            self.gap = gap;
            self.at = at();
        }
    }

    fn detail(&self) -> String {
        if self.at.is_empty() {
            "all gaps zero".into()
        } else {
            format!("worst at {}", self.at)
        }
    }
}

/// Exact orthogonality of `m_0..=m_N` and the squared norms `(β)_n / (n! c^n)`.
pub fn classical_orthogonality(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Orthogonality;
    let n_max = cfg.n(12);
    cfg.classical_grid
        .iter()
        .map(|p| {
            let name = format!("meixner orthogonality {} n<={n_max}", mlabel(p));
            let identity = "(m_i, m_j) = 0 for i != j and (m_n, m_n) = (beta)_n / (n! c^n) under the normalized Pascal measure";
            let ms = meixner_polys(n_max, p);
            let mut bad = Vec::new();
            for i in 0..=n_max {
                for j in 0..=i {
                    let got = match pascal_inner(&ms[i], &ms[j], p) {
                        Ok(v) => v,
                        Err(e) => return Check::failed(suite, name, identity, &e),
                    };
                    let want = if i == j {
                        pochhammer(p.beta(), i)
                            / (ExactScalar::from_integer(factorial(i)) * num_traits::pow(p.c().clone(), i))
                    } else {
                        ExactScalar::zero()
                    };
                    if got != want {
                        bad.push(format!("({i},{j})"));
                    }
                }
            }
            Check::exact(suite, name, identity, bad.len(), bad.join(" "))
        })
        .collect()
}

/// Exact Sobolev orthogonality of the coherent construction and coefficientwise
/// agreement with Gram–Schmidt on the monomials.
pub fn sobolev_orthogonality(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Orthogonality;
    let n_max = cfg.n(12);
    let mut out = Vec::new();
    for p in &cfg.sobolev_grid {
        let ss = sobolev_polys(n_max, p);
        let name = format!("sobolev orthogonality {} n<={n_max}", slabel(p));
        let identity = "(S_i, S_j)_S = (S_i, S_j) + lambda (Delta S_i, Delta S_j) = 0 for i != j";
        let mut bad = Vec::new();
        let mut err = None;
        'outer: for i in 0..=n_max {
            for j in 0..i {
                match sobolev_inner(&ss[i], &ss[j], p) {
                    Ok(v) if v.is_zero() => {}
                    Ok(_) => bad.push(format!("({i},{j})")),
                    Err(e) => {
                        err = Some(e);
                        break 'outer;
                    }
                }
            }
        }
        out.push(match err {
            Some(e) => Check::failed(suite, name, identity, &e),
            None => Check::exact(suite, name, identity, bad.len(), bad.join(" ")),
        });

        let name = format!("gram-schmidt oracle {} n<={n_max}", slabel(p));
        let identity = "S_n from the telescoped q_k m_k(x; beta-1, c) sum equals Gram-Schmidt on monomials rescaled to (1/n!)(1-1/c)^n";
        out.push(match gram_schmidt_polys(n_max, p) {
            Ok(gs) => {
                let bad: Vec<String> = (0..=n_max).filter(|&n| gs[n] != ss[n]).map(|n| n.to_string()).collect();
                Check::exact(suite, name, identity, bad.len(), bad.join(" "))
            }
            Err(e) => Check::failed(suite, name, identity, &e),
        });
    }
    out
}

/// Explicit form against the three-term recurrence, and the shift and
/// difference relations, for general `β`.
pub fn meixner_relations(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Recurrences;
    let n_max = cfg.n(25);
    let mut out = Vec::new();
    for p in &cfg.general_beta_grid {
        let ms = meixner_polys(n_max, p);
        let lowered = meixner_polys(n_max, &p.with_beta_shift(-1));
        let ratio = (p.c() - int(1)) / p.c();

        let bad: Vec<String> = (0..=n_max)
            .filter(|&n| meixner_poly(n, p) != ms[n])
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("explicit vs recurrence {} n<={n_max}", mlabel(p)),
            "hypergeometric explicit form of m_n equals the three-term recurrence",
            bad.len(),
            bad.join(" "),
        ));

        let bad: Vec<String> = (1..=n_max)
            .filter(|&n| &ms[n] - &ms[n - 1] != lowered[n])
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("shift relation {} n<={n_max}", mlabel(p)),
            "m_n(x; beta, c) - m_{n-1}(x; beta, c) = m_n(x; beta-1, c)",
            bad.len(),
            bad.join(" "),
        ));

        let bad: Vec<String> = (1..=n_max)
            .filter(|&n| forward_difference(&(&ms[n] - &ms[n - 1])) != ms[n - 1].scale(&ratio))
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("difference relation {} n<={n_max}", mlabel(p)),
            "Delta[m_n - m_{n-1}](x; beta, c) = ((c-1)/c) m_{n-1}(x; beta, c)",
            bad.len(),
            bad.join(" "),
        ));
    }
    out
}

/// The coherence relation and the weighted-sum representation of `q_n S_n`.
pub fn coherence_identities(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Recurrences;
    let n_max = cfg.n(20);
    let mut out = Vec::new();
    for p in &cfg.sobolev_grid {
        let bad: Vec<String> = (1..=n_max)
            .filter(|&n| !telescoping_check(n, p))
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("coherence relation {} n<={n_max}", slabel(p)),
            "m_n - m_{n-1} = S_n - a_{n-1} S_{n-1}",
            bad.len(),
            bad.join(" "),
        ));
        let bad: Vec<String> = (0..=n_max)
            .filter(|&n| !proposition_serie_check(n, p))
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("weighted sum {} n<={n_max}", slabel(p)),
            "q_n S_n(x) = sum_{k<=n} q_k m_k(x; beta-1, c), S_n from the coherence relation",
            bad.len(),
            bad.join(" "),
        ));
    }
    out
}

/// `a_n` and `q_n`: recurrence against ratios, range, limit and degeneration.
pub fn coefficient_sequences(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Recurrences;
    let n_max = cfg.n(30);
    let mut out = Vec::new();
    for p in &cfg.sobolev_grid {
        let label = slabel(p);
        let a = a_sequence(n_max.max(40), p);
        let q = q_sequence(n_max, p);
        let from_ratios = q_from_ratios(&a[..n_max]);
        let bad: Vec<String> = (0..=n_max)
            .filter(|&n| q[n] != from_ratios[n])
            .map(|n| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("q recurrence vs ratios {label} n<={n_max}"),
            "q_n from its three-term recurrence equals prod_{k<n} 1/a_k",
            bad.len(),
            bad.join(" "),
        ));

        let bad: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, an)| !(an.is_positive() && *an <= &ExactScalar::one()))
            .map(|(n, _)| n.to_string())
            .collect();
        out.push(Check::exact(
            suite,
            format!("a_n in (0, 1] {label} n<={}", a.len() - 1),
            "0 < a_n <= 1",
            bad.len(),
            bad.join(" "),
        ));

        let lim = a_limit(p);
        let c = to_f64(p.c());
        let eta = to_f64(p.eta());
        out.push(Check::within(
            suite,
            format!("limit quadratic {label}"),
            "c a^2 - (1 + eta c) a + 1 = 0 at the limit of a_n",
            (c * lim * lim - (1.0 + eta * c) * lim + 1.0).abs(),
            cfg.tol.quadratic_residual,
            format!("a = {lim}"),
        ));
        // geometric convergence needs β = 1; otherwise a_n - a decays like 1/n
        if p.c() == &rat(1, 2) && p.beta().is_one() {
            let gap = (to_f64(&a[40]) - lim).abs();
            out.push(Check::within(
                suite,
                format!("a_40 vs limit {label}"),
                "a_n tends to the smaller root of c z^2 - (1 + eta c) z + 1",
                gap,
                cfg.tol.a_limit_gap,
                format!("a_40 = {}, a = {lim}", to_f64(&a[40])),
            ));
        } else {
            let far = a_sequence(4 * 40, p);
            let gaps: Vec<f64> = [20, 40, 80, 160].iter().map(|&n| (to_f64(&far[n]) - lim).abs()).collect();
            out.push(Check::exact(
                suite,
                format!("a_n approaches limit {label}"),
                "a_n tends to the smaller root of c z^2 - (1 + eta c) z + 1",
                usize::from(!is_monotone_decreasing(&gaps)),
                format!("|a_n - a| at n = 20, 40, 80, 160: {gaps:?}"),
            ));
        }

        let flat = sp(p.beta().clone(), p.c().clone(), ExactScalar::zero());
        let ones = a_sequence(n_max, &flat)
            .iter()
            .chain(&q_sequence(n_max, &flat))
            .filter(|v| !v.is_one())
            .count();
        let classical = meixner_polys(n_max.min(12), &flat.meixner());
        let same = sobolev_polys(n_max.min(12), &flat)
            .iter()
            .zip(&classical)
            .filter(|(s, m)| s != m)
            .count();
        out.push(Check::exact(
            suite,
            format!("lambda=0 degeneration beta={},c={}", fr(p.beta()), fr(p.c())),
            "lambda = 0 gives a_n = q_n = 1 and S_n = m_n",
            ones + same,
            String::new(),
        ));
    }
    out
}

fn gm_grid_check(
    suite: Suite,
    cfg: &VerifyConfig,
    p: &SobolevParams,
    closed: impl Fn(u64, f64) -> Result<f64>,
) -> Check {
    let name = format!("closed vs truncated N={} {}", cfg.truncation, slabel(p));
    let identity = "closed-form G_M(x, w) equals sum_{n<=N} q_n S_n(x) w^n";
    let k = gf_constants(p);
    let mut worst = Worst::default();
    for &x in &cfg.xs {
        for w in cfg.omegas_with(k.a * to_f64(p.c())) {
            let pair = closed(x, w).and_then(|cl| Ok((cl, gm_truncated(x as f64, w, p, cfg.truncation)?)));
            match pair {
                Ok((cl, tr)) => worst.record(cl, tr, || format!("x={x}, omega={w}")),
                Err(e) => return Check::failed(suite, name, identity, &e),
            }
        }
    }
    let detail = worst.detail();
    Check::within(suite, name, identity, worst.gap, cfg.tol.gf_gap, detail)
}

/// Coefficients of a closed form's Taylor expansion against `q_n S_n(x)`.
fn taylor_stream_check(
    suite: Suite,
    cfg: &VerifyConfig,
    p: &SobolevParams,
    x: u64,
    taylor: Result<Vec<ExactScalar>>,
) -> Check {
    let n_max = taylor.as_ref().map(|t| t.len().saturating_sub(1)).unwrap_or(0);
    let name = format!("taylor coefficients {} x={x} n<={n_max}", slabel(p));
    let identity = "Taylor coefficients of the closed-form G_M equal q_n S_n(x)";
    let tol = 10f64.powi(-(cfg.digits as i32 - 10));
    match taylor {
        Ok(t) => {
            let w = weighted_sobolev_values(n_max, &int(x as i64), p);
            let gap = max_relative_gap(&t, &w, 1.0);
            Check::within(suite, name, identity, gap, tol, format!("{} digits", cfg.digits))
        }
        Err(e) => Check::failed(suite, name, identity, &e),
    }
}

/// The `β = 1` closed form.
pub fn gf_beta1(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::GfBeta1;
    let mut out = Vec::new();
    for p in &cfg.gf_beta1_grid {
        out.push(gm_grid_check(suite, cfg, p, |x, w| gm_closed_beta1(x as f64, w, p)));

        let k = gf_constants(p);
        let eta = to_f64(p.eta());
        let c = to_f64(p.c());
        if eta == 2.0 && c == 0.5 {
            let gap = (k.gamma - 0.5).abs().max((k.delta - 0.5).abs());
            out.push(Check::within(
                suite,
                format!("gamma = delta = 1/2 {}", slabel(p)),
                "gamma = (a - a^2 c)/(1 - a^2 c) and delta = (1 - a)/(1 - a^2 c) both equal 1/2 when eta c = 1",
                gap,
                cfg.tol.gamma_delta,
                format!("gamma = {}, delta = {}", k.gamma, k.delta),
            ));
        }
        let gap = (k.gamma + k.delta - 1.0).abs();
        out.push(Check::within(
            suite,
            format!("gamma + delta = 1 {}", slabel(p)),
            "gamma + delta = 1",
            gap,
            cfg.tol.gamma_delta,
            String::new(),
        ));
        let x = cfg.xs.iter().copied().max().unwrap_or(0);
        out.push(taylor_stream_check(
            suite,
            cfg,
            p,
            x,
            gm_taylor_beta1(&int(x as i64), cfg.n(40), p, cfg.digits),
        ));
    }
    out
}

/// `(a, b, c, y, z)` of the bilinear sum used for the `β ≠ 1` closed form:
/// `a = -x`, `b = (β-1)δ`, `c = β-1`, `y = -ω₁`, `z = ω₂/(1+ω₂)`.
pub fn hansen_constellation(x: u64, omega: f64, p: &SobolevParams) -> Result<(f64, f64, f64, f64, f64)> {
    let (w1, w2) = omega_substitutions(omega, p)?;
    let k = gf_constants(p);
    let bm1 = to_f64(p.beta()) - 1.0;
    Ok((-(x as f64), bm1 * k.delta, bm1, -w1, w2 / (1.0 + w2)))
}

/// The `β ≠ 1` closed form, its `2F1` argument, the `λ = 0` degeneration and
/// continuity at `β = 1`.
pub fn gf_general(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::GfGeneral;
    let mut out = Vec::new();
    for p in &cfg.gf_general_grid {
        out.push(gm_grid_check(suite, cfg, p, |x, w| gm_closed_general(x, w, p)));

        let k = gf_constants(p);
        let c = to_f64(p.c());
        let mut worst = Worst::default();
        let mut failure = None;
        for w in cfg.omegas_with(k.a * c) {
            match omega_substitutions(w, p) {
                Ok((w1, w2)) => {
                    let lhs = (w2 - w1) / (1.0 + w2);
                    worst.record(lhs, gm_hypergeometric_argument(w, k.a, c), || format!("omega={w}"));
                }
                Err(e) => failure = Some(e),
            }
        }
        let name = format!("2F1 argument {}", slabel(p));
        let identity = "(w2 - w1)/(1 + w2) = w (c-1)(1 - a^2 c) / ((1 - c a w)(a c - w))";
        out.push(match failure {
            Some(e) => Check::failed(suite, name, identity, &e),
            None => {
                let detail = worst.detail();
                Check::within(suite, name, identity, worst.gap, cfg.tol.hypergeometric_argument, detail)
            }
        });

        let flat = sp(p.beta().clone(), p.c().clone(), ExactScalar::zero());
        let name = format!("lambda=0 reduces to the Meixner generating function beta={},c={}", fr(p.beta()), fr(p.c()));
        let identity = "G_M at lambda = 0 equals (1 - w/c)^x (1 - w)^(-x-beta)";
        let mut worst = Worst::default();
        let mut failure = None;
        for &x in &cfg.xs {
            for w in cfg.omegas_with(gf_constants(&flat).a * c) {
                match gm_closed(x as f64, w, &flat).and_then(|g| Ok((g, meixner_gf_closed(x as f64, w, &flat.meixner())?))) {
                    Ok((g, m)) => worst.record(g, m, || format!("x={x}, omega={w}")),
                    Err(e) => failure = Some(e),
                }
            }
        }
        out.push(match failure {
            Some(e) => Check::failed(suite, name, identity, &e),
            None => {
                let detail = worst.detail();
                Check::within(suite, name, identity, worst.gap, cfg.tol.lambda_zero_gf, detail)
            }
        });

        let x = cfg.xs.iter().copied().max().unwrap_or(0);
        out.push(taylor_stream_check(
            suite,
            cfg,
            p,
            x,
            gm_taylor_general(x, cfg.n(40), p, cfg.digits),
        ));
    }

    // β → 1 from both sides, at every (c, λ) of the β = 1 grid
    for p1 in &cfg.gf_beta1_grid {
        let name = format!("continuity at beta=1 c={},lambda={}", fr(p1.c()), fr(p1.lambda()));
        let identity = "the beta != 1 closed form tends to the beta = 1 closed form as beta -> 1";
        let eps = crate::scalar::from_f64(cfg.tol.beta_offset).unwrap_or_else(|_| rat(1, 1_000_000));
        let mut worst = Worst::default();
        let mut failure = None;
        for side in [&int(1) - &eps, &int(1) + &eps] {
            let q = sp(side.clone(), p1.c().clone(), p1.lambda().clone());
            let radius = gf_constants(p1).a.min(gf_constants(&q).a) * to_f64(p1.c());
            for &x in &cfg.xs {
                for w in cfg.omegas_with(radius) {
                    let pair = gm_closed_general(x, w, &q).and_then(|g| Ok((g, gm_closed_beta1(x as f64, w, p1)?)));
                    match pair {
                        Ok((g, b1)) => worst.record(g, b1, || format!("beta={}, x={x}, omega={w}", to_f64(&side))),
                        Err(e) => failure = Some(e),
                    }
                }
            }
        }
        out.push(match failure {
            Some(e) => Check::failed(suite, name, identity, &e),
            None => {
                let detail = worst.detail();
                Check::within(suite, name, identity, worst.gap, cfg.tol.beta_continuity, detail)
            }
        });
    }
    out
}

/// Taylor coefficients of `F(ω)` three ways, `F(0) = 1`, and `λ = 0`.
pub fn f_coefficient_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::FCoeffs;
    let n_max = cfg.n(40);
    let digits = cfg.digits.max(30);
    let mut out = Vec::new();
    for p in &cfg.f_grid {
        let label = slabel(p);
        let identity = "h_n from the recurrence (n+1)h_{n+1} = [n(1+eta c) + beta-1]h_n - c(n+beta-2)h_{n-1} equals the Taylor coefficients of (1 - w/a)^(-(beta-1)gamma) (1 - w c a)^(-(beta-1)delta)";
        let name = format!("h_n recurrence vs closed form {label} n<={n_max}");
        match f_coefficients(n_max, p, digits) {
            Ok(fc) => {
                let gap = max_relative_gap(&fc.recurrence, &fc.closed_form, 0.0);
                out.push(Check::within(
                    suite,
                    name,
                    identity,
                    gap,
                    cfg.tol.f_relative,
                    format!("{digits} digits, {:?}", fc.precision),
                ));
                let bad = fc.from_q.iter().zip(&fc.recurrence).filter(|(u, v)| u != v).count();
                out.push(Check::exact(
                    suite,
                    format!("h_n = q_n (beta-1)_n / n! {label} n<={n_max}"),
                    "the h_n recurrence reproduces q_n (beta-1)_n / n!",
                    bad,
                    String::new(),
                ));
            }
            Err(e) => out.push(Check::failed(suite, name, identity, &e)),
        }

        let name = format!("F(0) = 1 {label}");
        out.push(match f_closed(0.0, p) {
            Ok(v) => Check::within(suite, name, "F(0) = 1", (v - 1.0).abs(), 0.0, format!("F(0) = {v}")),
            Err(e) => Check::failed(suite, name, "F(0) = 1", &e),
        });

        let flat = sp(p.beta().clone(), p.c().clone(), ExactScalar::zero());
        let name = format!("lambda=0 gives (1-w)^(1-beta) beta={},c={}", fr(p.beta()), fr(p.c()));
        let identity = "at lambda = 0 every route gives h_n = (beta-1)_n / n!";
        out.push(match f_coefficients(n_max, &flat, digits) {
            Ok(fc) => {
                let bm1 = p.beta() - int(1);
                let bad = (0..=n_max)
                    .filter(|&n| {
                        let want = pochhammer(&bm1, n) / ExactScalar::from_integer(factorial(n));
                        fc.from_q[n] != want || fc.recurrence[n] != want || fc.closed_form[n] != want
                    })
                    .count();
                Check::exact(suite, name, identity, bad, format!("{:?}", fc.precision))
            }
            Err(e) => Check::failed(suite, name, identity, &e),
        });
    }
    out
}

/// Pfaff–Kummer on a seeded random grid, terminating-sum consistency, and the
/// bilinear `2F1` sum at the generating-function constellation.
pub fn hypergeom_identities(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::HypergeomIdentities;
    let opts = SeriesOptions::default();
    let mut out = Vec::new();

    let identity = "2F1(a, b; c; z) = (1-z)^(-b) 2F1(c-a, b; c; z/(z-1))";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points: Vec<(f64, f64, f64, f64)> = vec![(-3.0, 0.7, 1.9, 0.4), (0.5, 1.2, 2.3, -0.6)];
    points.extend((0..cfg.random_points).map(|_| {
        (
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(0.5..3.5),
            rng.random_range(-0.6..0.45),
        )
    }));
    let mut worst = Worst::default();
    let mut failure = None;
    for &(a, b, c0, z) in &points {
        match pfaff_kummer_check(a, b, c0, z, opts) {
            Ok((l, r)) => worst.record(l, r, || format!("a={a}, b={b}, c={c0}, z={z}")),
            Err(e) => failure = Some(e),
        }
    }
    let name = format!("pfaff-kummer {} points seed={}", points.len(), cfg.seed);
    out.push(match failure {
        Some(e) => Check::failed(suite, name, identity, &e),
        None => {
            let detail = worst.detail();
            Check::within(suite, name, identity, worst.gap, cfg.tol.pfaff_kummer, detail)
        }
    });

    let mut worst = Worst::default();
    let mut failure = None;
    for m in 0..=12usize {
        for &(b, c0, z) in &[(0.7, 1.9, 0.4), (-1.3, 0.6, -0.8), (2.5, 3.1, 0.95)] {
            let pair = hyp2f1_terminating(m, b, c0, z)
                .and_then(|t| Ok((t, hyp2f1_series(-(m as f64), b, c0, z, opts)?.value)));
            match pair {
                Ok((t, s)) => worst.record(t, s, || format!("m={m}, b={b}, c={c0}, z={z}")),
                Err(e) => failure = Some(e),
            }
        }
    }
    let name = "terminating vs series 2F1".to_string();
    let identity = "finite sum for 2F1(-m, b; c; z) equals the series routine";
    out.push(match failure {
        Some(e) => Check::failed(suite, name, identity, &e),
        None => {
            let detail = worst.detail();
            Check::within(suite, name, identity, worst.gap, cfg.tol.terminating_consistency, detail)
        }
    });

    let identity = "sum_k (a)_k (b)_k/(c)_k y^k/k! 2F1(c-a, c-b; c+k; z) = (1-z)^(a+b-c) 2F1(a, b; c; z + y - zy)";
    for p in &cfg.hansen_grid {
        let x = 3;
        let omega = 0.05;
        for (tag, keep_y, keep_z) in [("", true, true), (" y=0", false, true), (" z=0", true, false)] {
            let name = format!("bilinear sum at the constellation {} x={x} omega={omega}{tag}", slabel(p));
            let check = hansen_constellation(x, omega, p).and_then(|(a, b, c0, y, z)| {
                let y = if keep_y { y } else { 0.0 };
                let z = if keep_z { z } else { 0.0 };
                let h = hansen_check(a, b, c0, y, z, 400, opts)?;
                let mut worst = Worst::default();
                worst.record(h.left, h.right, || format!("a={a}, b={b}, c={c0}, y={y}, z={z}, terms={}", h.terms));
                Ok(worst)
            });
            out.push(match check {
                Ok(w) => {
                    let detail = w.detail();
                    Check::within(suite, name, identity, w.gap, cfg.tol.hansen, detail)
                }
                Err(e) => Check::failed(suite, name, identity, &e),
            });
        }
    }
    out
}

/// Laguerre and Laguerre–Sobolev orthogonality and the `G_L` closed forms.
pub fn laguerre_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Laguerre;
    let n_max = cfg.n(10);
    let mut out = Vec::new();
    for p in &cfg.laguerre_grid {
        let label = llabel(p);

        let ls = laguerre_polys(n_max, p.alpha());
        let mut bad = 0;
        for i in 0..=n_max {
            for j in 0..i {
                if !laguerre_inner(&ls[i], &ls[j], p.alpha()).map(|v| v.is_zero()).unwrap_or(false) {
                    bad += 1;
                }
            }
        }
        out.push(Check::exact(
            suite,
            format!("laguerre orthogonality alpha={} n<={n_max}", fr(p.alpha())),
            "(L_i, L_j)_L = 0 for i != j",
            bad,
            String::new(),
        ));

        let basis = laguerre_sobolev_basis(n_max, p);
        let ss: Vec<_> = (0..=n_max).map(|n| basis.polynomial(n)).collect();
        let mut bad = Vec::new();
        for i in 0..=n_max {
            for j in 0..i {
                if !laguerre_sobolev_inner(&ss[i], &ss[j], p).map(|v| v.is_zero()).unwrap_or(false) {
                    bad.push(format!("({i},{j})"));
                }
            }
        }
        out.push(Check::exact(
            suite,
            format!("laguerre-sobolev orthogonality {label} n<={n_max}"),
            "(S^L_i, S^L_j)_L + lambda_t (S^L_i', S^L_j')_L = 0 for i != j",
            bad.len(),
            bad.join(" "),
        ));

        let name = format!("G_L closed vs truncated N={} {label}", cfg.truncation);
        let identity = "closed-form G_L(x, w) equals sum_{n<=N} q^L_n S^L_n(x) w^n";
        let big = laguerre_sobolev_basis(cfg.truncation, p);
        let q = ql_sequence(cfg.truncation, p);
        let at = p.a_tilde();
        let mut worst = Worst::default();
        let mut failure = None;
        for &x in &cfg.xs {
            for w in [-0.05, 0.05, 0.25 * at] {
                let pair = gl_closed(x as f64, w, p).and_then(|cl| Ok((cl, gl_partial_sum(&big, &q, x as f64, w)?)));
                match pair {
                    Ok((cl, tr)) => worst.record(cl, tr, || format!("x={x}, omega={w}")),
                    Err(e) => failure = Some(e),
                }
            }
        }
        out.push(match failure {
            Some(e) => Check::failed(suite, name, identity, &e),
            None => {
                let detail = worst.detail();
                Check::within(suite, name, identity, worst.gap, cfg.tol.gf_gap, detail)
            }
        });
    }
    out
}

/// One limit sweep as it appears in reports and in `limit-sweep` output.
#[derive(Clone, Debug, Serialize)]
pub struct LimitSeries {
    pub relation: String,
    pub params: String,
    pub n: Option<usize>,
    pub x: Option<f64>,
    pub ks: Vec<u32>,
    pub cs: Vec<f64>,
    pub errors: Vec<f64>,
    pub monotone: bool,
}

pub const SWEEP_K: (u32, u32) = (4, 12);

fn sweep_ks() -> Vec<u32> {
    (SWEEP_K.0..=SWEEP_K.1).collect()
}

/// Every `c ↑ 1` sweep for one Laguerre parameter set: `m_n`, `S_n` and `q_n`
/// for `n = 0..=n_max` at `x`, then `G_M → G_L` at `(x, ω)`.
pub fn limit_sweeps(p: &LaguerreSobolevParams, n_max: usize, x: u64, omega: f64) -> Result<Vec<LimitSeries>> {
    let cs = c_sweep(SWEEP_K.0, SWEEP_K.1);
    let cf: Vec<f64> = cs.iter().map(to_f64).collect();
    let xr = int(x as i64);
    let series = |relation: &str, n: Option<usize>, errors: Vec<f64>| LimitSeries {
        relation: relation.to_string(),
        params: llabel(p),
        n,
        x: Some(x as f64),
        ks: sweep_ks(),
        cs: cf.clone(),
        monotone: is_monotone_decreasing(&errors),
        errors,
    };
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.push(series("meixner-laguerre", Some(n), meixner_laguerre_limit_check(n, &xr, p.alpha(), &cs)?));
    }
    for n in 0..=n_max {
        out.push(series("sobolev", Some(n), sobolev_limit_check(n, &xr, p, &cs)?));
    }
    for n in 0..=n_max {
        let mut s = series("q", Some(n), q_limit_check(n, p, &cs)?);
        s.x = None;
        out.push(s);
    }
    let mut s = series("generating-function", None, gm_gl_limit_check(x as f64, omega, p, &cs)?);
    s.params = format!("{},omega={omega}", llabel(p));
    out.push(s);
    Ok(out)
}

/// Monotone decay of every `c ↑ 1` sweep, the final Sobolev error, and the
/// exact first-degree error `(α+1)(1-c)`.
pub fn limit_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Limits;
    let n_max = cfg.n(6);
    let mut out = Vec::new();
    for p in &cfg.laguerre_grid {
        let label = llabel(p);
        let omega = 0.25 * p.a_tilde();
        let sweeps = match limit_sweeps(p, n_max, 1, omega) {
            Ok(s) => s,
            Err(e) => {
                out.push(Check::failed(suite, format!("limit sweeps {label}"), "c -> 1 limits", &e));
                continue;
            }
        };
        for s in &sweeps {
            let at = s.n.map(|n| format!(" n={n}")).unwrap_or_default();
            let identity = match s.relation.as_str() {
                "meixner-laguerre" => "c^n m_n(x/(1-c); alpha+1, c) -> L_n(x) as c -> 1",
                "sobolev" => "c^n S_n(x/(1-c)) -> S^L_n(x) with beta = alpha+1, lambda = lambda_t/(1-c)^2",
                "q" => "q_n(eta) -> q^L_n(lambda_t) with eta = 1 + lambda_t/c^2",
                _ => "G_M(x/(1-c), c w, lambda_t/(1-c)^2) -> G_L(x, w, lambda_t)",
            };
            out.push(Check::exact(
                suite,
                format!("{} sweep monotone {}{at}", s.relation, s.params),
                identity,
                usize::from(!s.monotone),
                format!("errors {:?}", s.errors),
            ));
            if s.relation == "sobolev" {
                let last = *s.errors.last().unwrap_or(&f64::NAN);
                out.push(Check::within(
                    suite,
                    format!("sobolev sweep final error {}{at}", s.params),
                    identity,
                    last,
                    cfg.tol.sobolev_limit_final,
                    format!("c = {}", s.cs.last().copied().unwrap_or(f64::NAN)),
                ));
            }
            if s.n == Some(1) && s.relation != "q" {
                let cs = c_sweep(SWEEP_K.0, SWEEP_K.1);
                let bad = s
                    .errors
                    .iter()
                    .zip(&cs)
                    .filter(|(e, c)| **e != to_f64(&((p.alpha() + int(1)) * (int(1) - *c))))
                    .count();
                out.push(Check::exact(
                    suite,
                    format!("{} sweep n=1 error (alpha+1)(1-c) {}", s.relation, s.params),
                    "first-degree limit error equals (alpha+1)(1-c) exactly",
                    bad,
                    String::new(),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::CONCRETE.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.expand().len(), 8);
    }

    #[test]
    fn check_statuses() {
        let c = Check::within(Suite::Limits, "x".into(), "i", 1e-3, 1e-2, String::new());
        assert!(c.passed());
        let c = Check::within(Suite::Limits, "x".into(), "i", f64::NAN, 1e-2, String::new());
        assert!(!c.passed());
        assert!(!Check::exact(Suite::Limits, "x".into(), "i", 2, String::new()).passed());
    }

    #[test]
    fn override_routes_by_branch() {
        let p = SobolevParams::new(int(1), rat(1, 3), int(2)).unwrap();
        let cfg = VerifyConfig::default().with_sobolev(p.clone());
        assert_eq!(cfg.gf_beta1_grid, vec![p.clone()]);
        assert_eq!(cfg.gf_general_grid.len(), 2);
        assert_eq!(cfg.sobolev_grid, vec![p]);
    }

    #[test]
    fn small_orthogonality_run_passes() {
        let cfg = VerifyConfig {
            max_n: Some(4),
            ..VerifyConfig::default()
        };
        let report = run(&[Suite::Orthogonality, Suite::Orthogonality], &cfg);
        assert_eq!(report.suites, vec![Suite::Orthogonality]);
        assert!(report.passed, "{:#?}", report.checks);
        assert_eq!(report.total, 4 + 2 * 4);
    }

    #[test]
    fn constellation_degenerate_at_zero() {
        let p = SobolevParams::new(int(2), rat(1, 2), int(1)).unwrap();
        let (a, b, c0, y, z) = hansen_constellation(3, 0.0, &p).unwrap();
        assert_eq!((a, c0, y, z), (-3.0, 1.0, 0.0, 0.0));
        assert!((b - gf_constants(&p).delta).abs() < 1e-15);
    }
}

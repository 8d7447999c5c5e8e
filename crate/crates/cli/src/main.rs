use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use meixner_sobolev::genfun::{gf_constants, gm_compare, meixner_gf_compare, DEFAULT_TRUNCATION};
use meixner_sobolev::laguerre::{
    gl_closed, gl_truncated, laguerre_polys, laguerre_sobolev_basis, laguerre_values, LaguerreSobolevParams,
};
use meixner_sobolev::meixner::{meixner_polys, meixner_values, MeixnerParams};
use meixner_sobolev::scalar::{format_rational, parse_rational, to_f64, ExactScalar};
use meixner_sobolev::sobolev::{a_limit, a_sequence, q_polynomials, q_sequence, sobolev_polys, sobolev_values, SobolevParams};
use meixner_sobolev::verify::{limit_sweeps, run, Suite, VerifyConfig};
use meixner_sobolev::Error;

#[derive(Parser, Debug)]
#[command(name = "msop", version)]
#[command(about = "Meixner, Meixner-Sobolev and Laguerre-Sobolev polynomials: evaluation, tables and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a polynomial family or a generating function at one point
    Eval(EvalArgs),
    /// The a_n, q_n sequences with the limit constants
    Coeffs(CoeffsArgs),
    /// Run verification suites; exit 0 iff every check passes
    Verify(VerifyArgs),
    /// Polynomial coefficient rows for a family
    Table(TableArgs),
    /// Errors of the c -> 1 limits along c = 1 - 2^-k
    LimitSweep(SweepArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Meixner / Sobolev beta (rational, e.g. 5/2)
    #[arg(long)]
    beta: Option<String>,
    /// Meixner parameter c (rational)
    #[arg(long)]
    c: Option<String>,
    /// Sobolev weight lambda (rational)
    #[arg(long)]
    lambda: Option<String>,
    /// Laguerre alpha (rational)
    #[arg(long)]
    alpha: Option<String>,
    /// Laguerre-Sobolev weight lambda~ (rational)
    #[arg(long = "lambda-t")]
    lambda_t: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Meixner,
    Sobolev,
    Laguerre,
    LaguerreSobolev,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GenFun {
    /// Classical Meixner generating function
    Meixner,
    /// Meixner-Sobolev generating function
    Gm,
    /// Laguerre-Sobolev generating function
    Gl,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, conflicts_with = "gf")]
    family: Option<Family>,
    #[arg(long, value_enum)]
    gf: Option<GenFun>,
    /// Degree (families only)
    #[arg(long)]
    n: Option<usize>,
    /// Evaluation point: rational for families, real for generating functions
    #[arg(long)]
    x: String,
    #[arg(long)]
    omega: Option<f64>,
    /// Truncation order of the series comparator
    #[arg(long = "max-n", default_value_t = DEFAULT_TRUNCATION)]
    max_n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "max-n", default_value_t = 10)]
    max_n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Suite name; repeat for several (default: all)
    #[arg(long)]
    suite: Vec<String>,
    /// Degree bound for the exact suites
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// Tolerance of the closed-form vs truncated-series comparisons
    #[arg(long)]
    tol: Option<f64>,
    /// Seed of the randomized identity grid
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Family::Sobolev)]
    family: Family,
    #[arg(long = "max-n", default_value_t = 6)]
    max_n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Largest degree swept
    #[arg(long = "max-n", default_value_t = 6)]
    max_n: usize,
    /// Nonnegative integer sample point
    #[arg(long, default_value_t = 1)]
    x: u64,
    /// Generating-function argument (default: a quarter of the radius)
    #[arg(long)]
    omega: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Config(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Config(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Config(format!("json: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn rational(flag: &str, v: &Option<String>) -> CliResult<Option<ExactScalar>> {
    v.as_deref()
        .map(|s| parse_rational(s).map_err(|e| Failure::Config(format!("--{flag}: {e}"))))
        .transpose()
}

fn required(flag: &str, v: &Option<String>) -> CliResult<ExactScalar> {
    rational(flag, v)?.ok_or_else(|| Failure::Config(format!("--{flag} is required")))
}

impl ParamArgs {
    fn meixner(&self) -> CliResult<MeixnerParams> {
        Ok(MeixnerParams::new(required("beta", &self.beta)?, required("c", &self.c)?)?)
    }

    fn sobolev(&self) -> CliResult<SobolevParams> {
        Ok(SobolevParams::new(
            required("beta", &self.beta)?,
            required("c", &self.c)?,
            required("lambda", &self.lambda)?,
        )?)
    }

    fn alpha(&self) -> CliResult<ExactScalar> {
        required("alpha", &self.alpha)
    }

    fn laguerre(&self) -> CliResult<LaguerreSobolevParams> {
        Ok(LaguerreSobolevParams::new(self.alpha()?, required("lambda-t", &self.lambda_t)?)?)
    }

    fn any_sobolev(&self) -> bool {
        self.beta.is_some() || self.c.is_some() || self.lambda.is_some()
    }

    fn any_laguerre(&self) -> bool {
        self.alpha.is_some() || self.lambda_t.is_some()
    }

    /// Missing Sobolev parameters default to β = 2, c = 1/2, λ = 1.
    fn sobolev_or_default(&self) -> CliResult<SobolevParams> {
        let or = |flag: &str, v: &Option<String>, d: &str| -> CliResult<ExactScalar> {
            Ok(rational(flag, v)?.unwrap_or_else(|| parse_rational(d).expect("literal")))
        };
        Ok(SobolevParams::new(
            or("beta", &self.beta, "2")?,
            or("c", &self.c, "1/2")?,
            or("lambda", &self.lambda, "1")?,
        )?)
    }

    /// Missing Laguerre parameters default to α = 1, λ̃ = 1.
    fn laguerre_or_default(&self) -> CliResult<LaguerreSobolevParams> {
        let alpha = rational("alpha", &self.alpha)?.unwrap_or_else(|| parse_rational("1").expect("literal"));
        let lt = rational("lambda-t", &self.lambda_t)?.unwrap_or_else(|| parse_rational("1").expect("literal"));
        Ok(LaguerreSobolevParams::new(alpha, lt)?)
    }
}

fn sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_csv(out: &Option<PathBuf>, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> CliResult<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn emit(output: &OutputArgs, header: &[&str], rows: Vec<Vec<String>>) -> CliResult<()> {
    match output.format {
        Format::Csv => write_csv(&output.out, header, &rows),
        Format::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .into_iter()
                .map(|r| header.iter().map(|h| h.to_string()).zip(r.into_iter().map(Into::into)).collect())
                .collect();
            write_json(&output.out, &objects)
        }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Meixner => "meixner",
        Family::Sobolev => "sobolev",
        Family::Laguerre => "laguerre",
        Family::LaguerreSobolev => "laguerre-sobolev",
    }
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    if let Some(gf) = args.gf {
        let x: f64 = args
            .x
            .parse()
            .or_else(|_| parse_rational(&args.x).map(|r| to_f64(&r)))
            .map_err(|_| Failure::Config(format!("--x: cannot parse {:?}", args.x)))?;
        let omega = args.omega.ok_or_else(|| Failure::Config("--omega is required with --gf".into()))?;
        let (name, closed, truncated) = match gf {
            GenFun::Meixner => {
                let c = meixner_gf_compare(x, omega, &args.params.meixner()?, args.max_n)?;
                ("meixner", c.closed, c.truncated)
            }
            GenFun::Gm => {
                let c = gm_compare(x, omega, &args.params.sobolev()?, args.max_n)?;
                ("gm", c.closed, c.truncated)
            }
            GenFun::Gl => {
                let p = args.params.laguerre()?;
                ("gl", gl_closed(x, omega, &p)?, gl_truncated(x, omega, &p, args.max_n)?)
            }
        };
        let row = vec![
            name.to_string(),
            x.to_string(),
            omega.to_string(),
            args.max_n.to_string(),
            closed.to_string(),
            truncated.to_string(),
            (closed - truncated).abs().to_string(),
        ];
        return emit(&args.output, &["gf", "x", "omega", "n", "closed", "truncated", "gap"], vec![row]);
    }

    let family = args
        .family
        .ok_or_else(|| Failure::Config("one of --family or --gf is required".into()))?;
    let n = args.n.ok_or_else(|| Failure::Config("--n is required with --family".into()))?;
    let x = parse_rational(&args.x).map_err(|e| Failure::Config(format!("--x: {e}")))?;
    let value = match family {
        Family::Meixner => meixner_values(n, &x, &args.params.meixner()?).pop(),
        Family::Sobolev => sobolev_values(n, &x, &args.params.sobolev()?).pop(),
        Family::Laguerre => laguerre_values(n, &x, &args.params.alpha()?).pop(),
        Family::LaguerreSobolev => laguerre_sobolev_basis(n, &args.params.laguerre()?).values(&x).pop(),
    }
    .expect("non-empty");
    let row = vec![
        family_name(family).to_string(),
        n.to_string(),
        format_rational(&x),
        format_rational(&value),
        to_f64(&value).to_string(),
    ];
    emit(&args.output, &["family", "n", "x", "value", "approx"], vec![row])
}

fn cmd_coeffs(args: CoeffsArgs) -> CliResult<()> {
    let p = args.params.sobolev()?;
    let a = a_sequence(args.max_n, &p);
    let q = q_sequence(args.max_n, &p);
    let rows: Vec<Vec<String>> = (0..=args.max_n)
        .map(|n| vec![n.to_string(), format_rational(&a[n]), format_rational(&q[n])])
        .collect();
    match args.output.format {
        Format::Csv => write_csv(&args.output.out, &["n", "a_n", "q_n"], &rows),
        Format::Json => {
            let k = gf_constants(&p);
            let polys: Vec<_> = sobolev_polys(args.max_n, &p)
                .iter()
                .enumerate()
                .map(|(n, s)| json!({ "n": n, "coefficients": s.coeffs().iter().map(format_rational).collect::<Vec<_>>() }))
                .collect();
            let value = json!({
                "beta": format_rational(p.beta()),
                "c": format_rational(p.c()),
                "lambda": format_rational(p.lambda()),
                "eta": format_rational(p.eta()),
                "a_limit": a_limit(&p),
                "gamma": k.gamma,
                "delta": k.delta,
                "sequence": rows.iter().map(|r| json!({ "n": r[0].parse::<usize>().unwrap_or(0), "a_n": r[1], "q_n": r[2] })).collect::<Vec<_>>(),
                "sobolev_polynomials": polys,
            });
            write_json(&args.output.out, &value)
        }
    }
}

fn cmd_table(args: TableArgs) -> CliResult<()> {
    let polys = match args.family {
        Family::Meixner => meixner_polys(args.max_n, &args.params.meixner()?),
        Family::Sobolev => sobolev_polys(args.max_n, &args.params.sobolev()?),
        Family::Laguerre => laguerre_polys(args.max_n, &args.params.alpha()?),
        Family::LaguerreSobolev => {
            let basis = laguerre_sobolev_basis(args.max_n, &args.params.laguerre()?);
            (0..=args.max_n).map(|n| basis.polynomial(n)).collect()
        }
    };
    let mut rows = Vec::new();
    for (n, poly) in polys.iter().enumerate() {
        for (k, coef) in poly.coeffs().iter().enumerate() {
            rows.push(vec![
                family_name(args.family).to_string(),
                n.to_string(),
                k.to_string(),
                format_rational(coef),
            ]);
        }
    }
    if args.family == Family::Sobolev {
        let p = args.params.sobolev()?;
        for (n, poly) in q_polynomials(args.max_n, &p).iter().enumerate() {
            for (k, coef) in poly.coeffs().iter().enumerate() {
                rows.push(vec!["q-eta".into(), n.to_string(), k.to_string(), format_rational(coef)]);
            }
        }
    }
    emit(&args.output, &["family", "n", "k", "coefficient"], rows)
}

fn cmd_verify(args: VerifyArgs) -> CliResult<()> {
    let suites = if args.suite.is_empty() {
        vec![Suite::All]
    } else {
        args.suite.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>()?
    };
    let mut cfg = VerifyConfig::default();
    if args.params.any_sobolev() {
        cfg = cfg.with_sobolev(args.params.sobolev_or_default()?);
    }
    if args.params.any_laguerre() {
        cfg = cfg.with_laguerre(args.params.laguerre_or_default()?);
    }
    if let Some(tol) = args.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Failure::Config(format!("--tol must be positive, got {tol}")));
        }
        cfg.tol.gf_gap = tol;
    }
    cfg.max_n = args.max_n;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }

    let report = run(&suites, &cfg);
    match args.format {
        Format::Json => write_json(&args.out, &report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.to_string(),
                        c.name.clone(),
                        if c.passed() { "pass".into() } else { "fail".into() },
                        c.measured.to_string(),
                        c.tolerance.to_string(),
                        c.identity.clone(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            write_csv(
                &args.out,
                &["suite", "name", "status", "measured", "tolerance", "identity", "detail"],
                &rows,
            )?;
        }
    }
    eprintln!(
        "{} of {} checks passed ({})",
        report.total - report.failures,
        report.total,
        report.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
    );
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_limit_sweep(args: SweepArgs) -> CliResult<()> {
    let p = args.params.laguerre_or_default()?;
    let omega = args.omega.unwrap_or(0.25 * p.a_tilde());
    let sweeps = limit_sweeps(&p, args.max_n, args.x, omega)?;
    if args.output.format == Format::Json {
        return write_json(&args.output.out, &sweeps);
    }
    let mut rows = Vec::new();
    for s in &sweeps {
        for ((k, c), e) in s.ks.iter().zip(&s.cs).zip(&s.errors) {
            rows.push(vec![
                s.relation.clone(),
                s.params.clone(),
                s.n.map(|n| n.to_string()).unwrap_or_default(),
                s.x.map(|x| x.to_string()).unwrap_or_default(),
                k.to_string(),
                c.to_string(),
                e.to_string(),
                s.monotone.to_string(),
            ]);
        }
    }
    write_csv(
        &args.output.out,
        &["relation", "params", "n", "x", "k", "c", "error", "monotone"],
        &rows,
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::LimitSweep(a) => cmd_limit_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

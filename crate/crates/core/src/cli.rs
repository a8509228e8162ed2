//! Command-line front end. [`run`] does the work and returns the text and
//! exit code instead of printing, so every command is testable in-process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::budan::diagnose;
use crate::conditions::{check, check_corollary1, find_shift, Rule, WeightScheme};
use crate::error::Error;
use crate::generate::{generate, GeneratorConfig};
use crate::gram::{certify, sample_nonneg, GramOracle, OracleStatus};
use crate::moment::{check_all, AtomicMeasure};
use crate::poly::{json, parse, Polynomial};
use crate::rational::parse_rational;

/// Exit code for malformed input or invalid flags.
pub const EXIT_USAGE: i32 = 64;
/// Exit code for well-formed input the library refuses (e.g. oversized basis).
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Parser)]
#[command(
    name = "sos-cone",
    version,
    about = "Linear sufficient conditions for sums of squares"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a sufficient condition on each input polynomial.
    Check(CheckArgs),
    /// Run the Gram-matrix oracle on each input polynomial.
    Certify(CertifyArgs),
    /// Print the comparison polynomials and their derivative signs at 1.
    Diagnose(DiagnoseArgs),
    /// Check the moment bounds on random atomic measures.
    Lemmas(LemmasArgs),
    /// Write random polynomials as JSON.
    Generate(GenerateArgs),
    /// Acceptance rates and oracle agreement on random instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Polynomial JSON file (one object or an array); `-` reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Inline polynomial in text form, e.g. "1 + x1^4 - x1*x2".
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Variable count for --poly.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Half degree d for --poly (default ceil(deg/2)).
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value = "theorem1")]
    pub rule: Rule,
    /// Constant split for corollary1, e.g. "1/4,3/4" (default uniform).
    #[arg(long)]
    pub weights: Option<String>,
    /// With corollary2: also search for the smallest certified shift M.
    #[arg(long)]
    pub find_shift: bool,
    /// Upper limit for the shift search.
    #[arg(long, default_value = "1048576")]
    pub m_max: String,
}

impl clap::builder::ValueParserFactory for Rule {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Rule>())
    }
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value_t = crate::gram::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = crate::gram::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Leave the Gram matrix out of the verdict.
    #[arg(long)]
    pub no_gram: bool,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 5)]
    pub atoms: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Fraction of exponents |α| <= 2d placed in the support.
    #[arg(long, default_value_t = 0.3)]
    pub density: f64,
    /// Largest numerator magnitude; 0 gives zero polynomials.
    #[arg(long, default_value_t = 100)]
    pub scale: u32,
    /// Add large positive constant and essential coefficients.
    #[arg(long)]
    pub boosted: bool,
}

impl GenArgs {
    fn config(&self, n: usize, d: u32) -> GeneratorConfig {
        let mut cfg = GeneratorConfig::new(n, d).boosted(self.boosted);
        cfg.density = self.density;
        cfg.max_numerator = self.scale;
        cfg
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub gen: GenArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Variable counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub n: Vec<usize>,
    /// Half degrees, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub d: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Nonnegativity samples per accepted instance.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = crate::gram::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[command(flatten)]
    pub gen: GenArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct CliOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn usage(msg: impl std::fmt::Display) -> Self {
        CliOutput {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command. Argument errors
/// map to [`EXIT_USAGE`]; `--help` and `--version` exit 0.
pub fn run_args<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                CliOutput {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    exit_code: code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cfg: &RunConfig) -> CliOutput {
    let (mut out, target) = match &cfg.command {
        Command::Check(a) => (run_check(a), &a.out),
        Command::Certify(a) => (run_certify(a), &a.out),
        Command::Diagnose(a) => (run_diagnose(a), &a.out),
        Command::Lemmas(a) => (run_lemmas(a), &a.out),
        Command::Generate(a) => (run_generate(a), &a.out),
        Command::Bench(a) => (run_bench(a), &a.out),
    };
    if let Some(path) = &target.output {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return CliOutput::usage(format!("cannot write {}: {e}", path.display()));
        }
        out.stdout.clear();
    }
    out
}

fn read_inputs(a: &InputArgs) -> Result<Vec<Polynomial>, String> {
    if let Some(text) = &a.poly {
        return parse(text, a.n, a.d)
            .map(|f| vec![f])
            .map_err(|e| format!("--poly: {e}"));
    }
    let Some(path) = &a.input else {
        return Err("no input: pass --input FILE or --poly TEXT".into());
    };
    let (name, text) = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        ("<stdin>".to_string(), s)
    } else {
        let s = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        (path.display().to_string(), s)
    };
    let polys = json::polys_from_json(&text).map_err(|e| format!("{name}: {e}"))?;
    if polys.is_empty() {
        return Err(format!("{name}: no polynomials"));
    }
    Ok(polys)
}

fn parse_weights(w: &Option<String>) -> Result<Option<WeightScheme>, String> {
    w.as_deref()
        .map(|s| WeightScheme::parse(s).map_err(|e| format!("--weights: {e}")))
        .transpose()
}

fn data_error(e: Error) -> CliOutput {
    CliOutput {
        exit_code: if matches!(e, Error::WeightLength { .. }) {
            EXIT_USAGE
        } else {
            EXIT_DATA
        },
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

pub fn run_check(a: &CheckArgs) -> CliOutput {
    let polys = match read_inputs(&a.input) {
        Ok(p) => p,
        Err(e) => return CliOutput::usage(e),
    };
    let weights = match parse_weights(&a.weights) {
        Ok(w) => w,
        Err(e) => return CliOutput::usage(e),
    };
    if weights.is_some() && a.rule != Rule::Corollary1 {
        return CliOutput::usage("--weights only applies to --rule corollary1");
    }
    if a.find_shift && a.rule != Rule::Corollary2 {
        return CliOutput::usage("--find-shift only applies to --rule corollary2");
    }
    let m_max = match parse_rational(&a.m_max) {
        Ok(m) => m,
        Err(e) => return CliOutput::usage(format!("--m-max: {e}")),
    };

    let mut out = CliOutput::default();
    let mut all = true;
    for f in &polys {
        let report = match check(f, a.rule, weights.as_ref()) {
            Ok(r) => r,
            Err(e) => return data_error(e),
        };
        all &= report.accepted;
        match a.out.format {
            Format::Json => {
                out.stdout.push_str(&report.to_json());
                out.stdout.push('\n');
            }
            Format::Table => {
                let _ = writeln!(out.stdout, "{f}");
                out.stdout.push_str(&report.to_table());
            }
        }
        if a.find_shift {
            let shift = match find_shift(f, &GramOracle::default(), &m_max) {
                Ok(s) => s,
                Err(e) => return data_error(e),
            };
            if !shift.guaranteed {
                out.stderr.push_str(
                    "warning: top-degree condition fails; shift search has no guarantee\n",
                );
            }
            out.stdout
                .push_str(&serde_json::to_string(&shift).expect("serializable"));
            out.stdout.push('\n');
        }
    }
    out.exit_code = if all { 0 } else { 1 };
    out
}

pub fn run_certify(a: &CertifyArgs) -> CliOutput {
    let polys = match read_inputs(&a.input) {
        Ok(p) => p,
        Err(e) => return CliOutput::usage(e),
    };
    if a.tol.is_nan() || a.tol <= 0.0 {
        return CliOutput::usage("--tol must be positive");
    }
    let mut out = CliOutput::default();
    let mut worst = OracleStatus::CertifiedSos;
    for f in &polys {
        let mut v = match certify(f, a.max_iter, a.tol) {
            Ok(v) => v,
            Err(e) => return data_error(e),
        };
        if a.no_gram {
            v.gram = None;
        }
        worst = match (worst, v.status) {
            (OracleStatus::LikelyNotSos, _) | (_, OracleStatus::LikelyNotSos) => {
                OracleStatus::LikelyNotSos
            }
            (OracleStatus::Inconclusive, _) | (_, OracleStatus::Inconclusive) => {
                OracleStatus::Inconclusive
            }
            _ => OracleStatus::CertifiedSos,
        };
        match a.out.format {
            Format::Json => {
                out.stdout.push_str(&v.to_json());
                out.stdout.push('\n');
            }
            Format::Table => {
                let _ = writeln!(
                    out.stdout,
                    "{f}\n  {:?} residual {:.3e} min_eig {:.3e} iterations {}",
                    v.status, v.residual, v.min_eig, v.iterations
                );
            }
        }
    }
    out.exit_code = worst.exit_code();
    out
}

pub fn run_diagnose(a: &DiagnoseArgs) -> CliOutput {
    let polys = match read_inputs(&a.input) {
        Ok(p) => p,
        Err(e) => return CliOutput::usage(e),
    };
    let weights = match parse_weights(&a.weights) {
        Ok(w) => w,
        Err(e) => return CliOutput::usage(e),
    };
    #[derive(Serialize)]
    struct Line<'a> {
        polynomial: String,
        comparison: &'a [crate::budan::Diagnostic],
    }
    let mut out = CliOutput::default();
    for f in &polys {
        let w = weights
            .clone()
            .unwrap_or_else(|| WeightScheme::uniform(f.half_degree()));
        let diags = match diagnose(f, &w) {
            Ok(d) => d,
            Err(e) => return data_error(e),
        };
        match a.out.format {
            Format::Json => {
                let line = Line {
                    polynomial: f.to_text(),
                    comparison: &diags,
                };
                out.stdout
                    .push_str(&serde_json::to_string(&line).expect("serializable"));
                out.stdout.push('\n');
            }
            Format::Table => {
                let _ = writeln!(out.stdout, "{f}");
                for dg in &diags {
                    let name = match dg.band {
                        None => "p".to_string(),
                        Some(k) => format!("p_{k}"),
                    };
                    let _ = writeln!(
                        out.stdout,
                        "  {name:<5} {:<30} derivatives at 1: [{}]  variations {}",
                        dg.text,
                        dg.derivatives_at_one.join(", "),
                        dg.variations
                    );
                }
            }
        }
    }
    out
}

pub fn run_lemmas(a: &LemmasArgs) -> CliOutput {
    if a.n == 0 || a.d == 0 || a.atoms == 0 {
        return CliOutput::usage("--n, --d and --atoms must be positive");
    }
    let mut rng = crate::generate::cell_rng(a.seed, a.n, a.d);
    let mut out = CliOutput::default();
    let mut violations = 0usize;
    for trial in 0..a.trials {
        let mu = AtomicMeasure::random(&mut rng, a.n, a.atoms);
        let (y, outcome) = match check_all(&mu, a.d) {
            Ok(r) => r,
            Err(e) => return data_error(e),
        };
        if !outcome.all() {
            violations += 1;
            let _ = writeln!(
                out.stdout,
                "{{\"trial\":{trial},\"outcome\":{},\"y\":{}}}",
                serde_json::to_string(&outcome).expect("serializable"),
                y.to_json()
            );
        }
    }
    match a.out.format {
        Format::Json => {
            let _ = writeln!(
                out.stdout,
                "{{\"n\":{},\"d\":{},\"trials\":{},\"atoms\":{},\"seed\":{},\"violations\":{violations}}}",
                a.n, a.d, a.trials, a.atoms, a.seed
            );
        }
        Format::Table => {
            let _ = writeln!(
                out.stdout,
                "n={} d={} trials={} violations={violations}",
                a.n, a.d, a.trials
            );
        }
    }
    out.exit_code = if violations == 0 { 0 } else { 1 };
    out
}

pub fn run_generate(a: &GenerateArgs) -> CliOutput {
    if a.n == 0 || a.d == 0 {
        return CliOutput::usage("--n and --d must be positive");
    }
    let polys = generate(&a.gen.config(a.n, a.d), a.count, a.seed);
    let mut out = CliOutput::default();
    match a.out.format {
        Format::Json => {
            out.stdout = json::polys_to_json(&polys);
            out.stdout.push('\n');
        }
        Format::Table => {
            for f in &polys {
                let _ = writeln!(out.stdout, "{f}");
            }
        }
    }
    out
}

/// Per-cell summary of a benchmark run. Everything here is a function of the
/// seed; wall-clock times are reported separately.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub d: u32,
    pub count: usize,
    pub theorem1_accepted: usize,
    pub corollary1_accepted: usize,
    pub corollary2_accepted: usize,
    /// Accepted by theorem1 or corollary1, hence sent to the oracle.
    pub oracle_checked: usize,
    pub oracle_certified: usize,
    pub oracle_likely_not: usize,
    pub oracle_inconclusive: usize,
    /// `oracle_certified / oracle_checked` (1 when nothing was checked).
    pub agreement: f64,
    pub sampling_violations: usize,
}

#[derive(Debug, Default, Clone, Copy)]
struct Timing {
    theorem1: Duration,
    corollary1: Duration,
    corollary2: Duration,
    oracle: Duration,
    oracle_calls: u32,
}

struct InstanceResult {
    t1: bool,
    c1: bool,
    c2: bool,
    oracle: Option<OracleStatus>,
    sampling_violation: bool,
    timing: Timing,
}

fn bench_instance(
    f: &Polynomial,
    samples: usize,
    seed: u64,
    oracle: GramOracle,
) -> crate::Result<InstanceResult> {
    let mut timing = Timing::default();
    let t = Instant::now();
    let t1 = check(f, Rule::Theorem1, None)?.accepted;
    timing.theorem1 = t.elapsed();
    let t = Instant::now();
    let c1 = check_corollary1(f, &WeightScheme::uniform(f.half_degree()))?.accepted;
    timing.corollary1 = t.elapsed();
    let t = Instant::now();
    let c2 = check(f, Rule::Corollary2, None)?.accepted;
    timing.corollary2 = t.elapsed();
    let mut status = None;
    let mut sampling_violation = false;
    if t1 || c1 {
        let t = Instant::now();
        status = Some(certify(f, oracle.max_iter, oracle.tol)?.status);
        timing.oracle = t.elapsed();
        timing.oracle_calls = 1;
        if samples > 0 {
            sampling_violation = sample_nonneg(f, samples, seed, 2.0).is_some();
        }
    }
    Ok(InstanceResult {
        t1,
        c1,
        c2,
        oracle: status,
        sampling_violation,
        timing,
    })
}

/// Runs one `(n, d)` cell; results are independent of thread scheduling.
pub fn bench_cell(
    gen: &GeneratorConfig,
    count: usize,
    seed: u64,
    samples: usize,
    oracle: GramOracle,
) -> crate::Result<(CellSummary, String)> {
    let polys = generate(gen, count, seed);
    let results: Vec<InstanceResult> = polys
        .par_iter()
        .enumerate()
        .map(|(i, f)| bench_instance(f, samples, seed.wrapping_add(i as u64), oracle))
        .collect::<crate::Result<_>>()?;

    let mut s = CellSummary {
        n: gen.nvars,
        d: gen.half_degree,
        count,
        theorem1_accepted: 0,
        corollary1_accepted: 0,
        corollary2_accepted: 0,
        oracle_checked: 0,
        oracle_certified: 0,
        oracle_likely_not: 0,
        oracle_inconclusive: 0,
        agreement: 1.0,
        sampling_violations: 0,
    };
    let mut total = Timing::default();
    for r in &results {
        s.theorem1_accepted += r.t1 as usize;
        s.corollary1_accepted += r.c1 as usize;
        s.corollary2_accepted += r.c2 as usize;
        s.sampling_violations += r.sampling_violation as usize;
        if let Some(st) = r.oracle {
            s.oracle_checked += 1;
            match st {
                OracleStatus::CertifiedSos => s.oracle_certified += 1,
                OracleStatus::LikelyNotSos => s.oracle_likely_not += 1,
                OracleStatus::Inconclusive => s.oracle_inconclusive += 1,
            }
        }
        total.theorem1 += r.timing.theorem1;
        total.corollary1 += r.timing.corollary1;
        total.corollary2 += r.timing.corollary2;
        total.oracle += r.timing.oracle;
        total.oracle_calls += r.timing.oracle_calls;
    }
    if s.oracle_checked > 0 {
        s.agreement = s.oracle_certified as f64 / s.oracle_checked as f64;
    }
    let per = |d: Duration, k: u32| {
        if k == 0 {
            0.0
        } else {
            d.as_secs_f64() * 1e6 / k as f64
        }
    };
    let c = count.max(1) as u32;
    let timing = format!(
        "n={} d={}: mean µs per check: theorem1 {:.1}, corollary1 {:.1}, corollary2 {:.1}, oracle {:.1}\n",
        s.n,
        s.d,
        per(total.theorem1, c),
        per(total.corollary1, c),
        per(total.corollary2, c),
        per(total.oracle, total.oracle_calls)
    );
    Ok((s, timing))
}

pub fn run_bench(a: &BenchArgs) -> CliOutput {
    if a.n.contains(&0) || a.d.contains(&0) {
        return CliOutput::usage("--n and --d must be positive");
    }
    let oracle = GramOracle {
        tol: crate::gram::DEFAULT_TOL,
        max_iter: a.max_iter,
    };
    let mut out = CliOutput::default();
    let mut cells = Vec::new();
    for &n in &a.n {
        for &d in &a.d {
            match bench_cell(&a.gen.config(n, d), a.count, a.seed, a.samples, oracle) {
                Ok((s, timing)) => {
                    out.stderr.push_str(&timing);
                    cells.push(s);
                }
                Err(e) => return data_error(e),
            }
        }
    }
    match a.out.format {
        Format::Json => {
            for c in &cells {
                out.stdout
                    .push_str(&serde_json::to_string(c).expect("serializable"));
                out.stdout.push('\n');
            }
        }
        Format::Table => {
            let _ = writeln!(
                out.stdout,
                "{:>3} {:>3} {:>6} {:>9} {:>9} {:>9} {:>8} {:>9} {:>10} {:>8}",
                "n",
                "d",
                "count",
                "theorem1",
                "cor1",
                "cor2",
                "oracle",
                "certified",
                "agreement",
                "negative"
            );
            for c in &cells {
                let _ = writeln!(
                    out.stdout,
                    "{:>3} {:>3} {:>6} {:>9} {:>9} {:>9} {:>8} {:>9} {:>9.1}% {:>8}",
                    c.n,
                    c.d,
                    c.count,
                    c.theorem1_accepted,
                    c.corollary1_accepted,
                    c.corollary2_accepted,
                    c.oracle_checked,
                    c.oracle_certified,
                    100.0 * c.agreement,
                    c.sampling_violations
                );
            }
        }
    }
    out
}

//! `dnfrac` command-line front end.
//!
//! Exit codes: 0 on success (including `--help`), 1 when a verification
//! suite fails or a computation cannot be completed, 2 for bad flags or
//! inputs that violate a documented invariant.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::dn_operator::DnSequence;
use crate::error::Error;
use crate::par::Execution;
use crate::solver::{
    cauchy_solution, eval_grid, fundamental_system, linspace, CauchyData, GeneralSolutionWeights, GridPoint,
    ProblemSpec,
};
use crate::special_fn::{ks_eval, ml_eval, KilbasSaigoParams, MittagLefflerParams, SeriesEvalConfig};
use crate::suites::{Suite, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "dnfrac",
    version,
    about = "Series solutions of D^{gamma_0..gamma_m} u = lambda y^s u"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Kilbas-Saigo function E_{alpha,m,l}(z)
    EvalKs {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        mm: f64,
        #[arg(long)]
        ll: f64,
        /// Argument as `re` or `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(z), |z| <= 100
    EvalMl {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Tabulate the fundamental solutions (and optionally a combination) as CSV
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Weights d_0..d_{m-1}; adds `sum` rows with sum_k d_k u_k
        #[arg(long, num_args = 1.., allow_hyphen_values = true, value_parser = parse_complex)]
        weights: Option<Vec<Complex64>>,
    },
    /// Tabulate the Cauchy problem solution with data A_0..A_{m-1}
    Cauchy {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Limits A_0..A_{m-1} of the boundary operators at y = 0
        #[arg(long = "A", num_args = 1.., required = true, allow_hyphen_values = true, value_parser = parse_complex)]
        a: Vec<Complex64>,
    },
    /// Run verification suites; exits 1 if any fails
    Verify {
        /// all, residual, oracle, reductions, cauchy, algebra or ratio
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Override every selected suite's tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Run trials on the calling thread only
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Relative stopping tolerance of the series
    #[arg(long, default_value_t = 1e-12)]
    rel_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_terms: usize,
}

impl SeriesArgs {
    fn config(&self) -> Result<SeriesEvalConfig, Error> {
        SeriesEvalConfig::new(self.rel_tol, self.max_terms)
    }
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Comma-separated gamma_0..gamma_m, each in (0, 1]
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    gammas: Vec<f64>,
    /// Degeneracy exponent s >= 0
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    /// Spectral parameter as `re` or `re,im`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "1")]
    lambda: Complex64,
    /// Grid `start:end:points`, inclusive, start > 0
    #[arg(long, value_parser = parse_grid, default_value = "0.1:2:20")]
    grid: Grid,
    /// CSV destination (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    series: SeriesArgs,
    /// Evaluate grid points on the calling thread only
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Grid {
    start: f64,
    end: f64,
    points: usize,
}

/// `re`, `re,im`, or `re+imi` / `re-imi` / `imi`.
fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    let bad = || format!("'{text}' is not a complex number (use re or re,im)");
    if let Some((re, im)) = t.split_once(',') {
        let re = re.trim().parse::<f64>().map_err(|_| bad())?;
        let im = im.trim().parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            s => s,
        };
        let re = re.parse::<f64>().map_err(|_| bad())?;
        let im = im.trim_start_matches('+').parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad())
}

fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, end, points] = parts.as_slice() else {
        return Err(format!("grid '{text}' must be start:end:points"));
    };
    let start: f64 = start.parse().map_err(|_| format!("bad grid start '{start}'"))?;
    let end: f64 = end.parse().map_err(|_| format!("bad grid end '{end}'"))?;
    let points: usize = points.parse().map_err(|_| format!("bad grid point count '{points}'"))?;
    if !(start > 0.0 && start.is_finite()) {
        return Err(format!("grid start must be > 0, got {start}"));
    }
    if !(end >= start && end.is_finite()) {
        return Err(format!("grid end must be >= start, got {end}"));
    }
    if points < 1 {
        return Err("grid needs at least one point".into());
    }
    Ok(Grid { start, end, points })
}

fn format_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

enum Failure {
    Usage(String),
    Compute(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation(_) | Error::Index { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(format!("I/O error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Compute(format!("CSV error: {e}"))
    }
}

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Verify) => 1,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::EvalKs {
            alpha,
            mm,
            ll,
            z,
            series,
        } => {
            let params = KilbasSaigoParams::new(alpha, mm, ll)?;
            writeln!(out, "{}", format_complex(ks_eval(params, z, &series.config()?)?))?;
        }
        Command::EvalMl { alpha, beta, z, series } => {
            let params = MittagLefflerParams::new(alpha, beta)?;
            writeln!(out, "{}", format_complex(ml_eval(params, z, &series.config()?)?))?;
        }
        Command::Solve { problem, weights } => {
            let spec = problem_spec(&problem)?;
            let weights = weights.map(|w| GeneralSolutionWeights::new(&spec, w)).transpose()?;
            tabulate(&problem, &spec, weights.as_ref(), out)?;
        }
        Command::Cauchy { problem, a } => {
            let spec = problem_spec(&problem)?;
            let data = CauchyData::new(&spec, a)?;
            let weights = cauchy_solution(&spec, &data)?;
            let listed: Vec<String> = weights.values().iter().map(|d| format_complex(*d)).collect();
            writeln!(err, "weights d_k = A_k / Gamma(alpha_k + 1): {}", listed.join(" "))?;
            tabulate(&problem, &spec, Some(&weights), out)?;
        }
        Command::Verify {
            suite,
            seed,
            tol,
            sequential,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(Failure::Usage)?]
            };
            if let Some(t) = tol {
                if !(t > 0.0) {
                    return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
                }
            }
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            writeln!(out, "seed={seed}")?;
            let mut all_passed = true;
            for s in suites {
                let r = s.run(seed, tol, exec);
                all_passed &= r.passed;
                write!(
                    out,
                    "SUITE {} {} max_rel_err={:e} tol={:e}",
                    s.name(),
                    if r.passed { "PASS" } else { "FAIL" },
                    r.max_rel_error,
                    r.tolerance
                )?;
                match &r.note {
                    Some(note) => writeln!(out, " ({note})")?,
                    None => writeln!(out)?,
                }
            }
            if !all_passed {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}

fn problem_spec(p: &ProblemArgs) -> Result<ProblemSpec, Failure> {
    Ok(ProblemSpec::new(DnSequence::new(p.gammas.clone())?, p.s, p.lambda)?)
}

/// CSV `y,mode,re_u,im_u`, ascending `y` then mode, with `sum` rows when
/// weights are given.
fn tabulate(
    p: &ProblemArgs,
    spec: &ProblemSpec,
    weights: Option<&GeneralSolutionWeights>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let cfg = p.series.config()?;
    let sols = fundamental_system(spec, &cfg)?;
    let mut ys = linspace(p.grid.start, p.grid.end, p.grid.points);
    ys.sort_by(f64::total_cmp);
    let exec = if p.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let rows = eval_grid(&sols, &ys, &cfg, exec)?;
    match &p.out {
        Some(path) => write_csv(File::create(path)?, &rows, weights),
        None => write_csv(out, &rows, weights),
    }
}

fn write_csv<W: Write>(sink: W, rows: &[GridPoint], weights: Option<&GeneralSolutionWeights>) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["y", "mode", "re_u", "im_u"])?;
    for row in rows {
        let y = row.y.to_string();
        for (k, u) in row.values.iter().enumerate() {
            w.write_record([y.as_str(), &k.to_string(), &u.re.to_string(), &u.im.to_string()])?;
        }
        if let Some(d) = weights {
            let sum: Complex64 = row.values.iter().zip(d.values()).map(|(u, d)| u * d).sum();
            w.write_record([y.as_str(), "sum", &sum.re.to_string(), &sum.im.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

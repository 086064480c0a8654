//! The `ncurve` command-line interface.
//!
//! [`run`] takes the argument list and returns the exit status together with
//! the text destined for stdout and stderr, so the binary is a thin wrapper
//! and every subcommand can be tested in-process.
//!
//! Exit statuses: 0 success, 1 invalid flags, 2 failed verification check,
//! 3 quadrature non-convergence.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{classify, verify_battery};
use crate::curvature::{sample, sample_range, samples_to_csv, CurvatureSample};
use crate::curve::{curve_derivative, CurveSpec};
use crate::error::Error;
use crate::fmt::{csv_row, g17};
use crate::integrate::{arc_length, truncated_total_curvature, IntegralResult, QuadConfig};
use crate::DEFAULT_MAX_N;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ncurve", version, about = "Speed, first curvature and total curvature of the curves C_n")]
pub struct Cli {
    /// Largest accepted dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// key=value lines
    Kv,
    /// human-readable certificate
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the non-real characteristic roots as "k alpha beta" lines.
    Roots {
        #[arg(long)]
        n: usize,
    },
    /// Print the p-th derivative x^(p)(t) as one CSV row.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 0)]
        deriv: usize,
    },
    /// Print speed, k1 and K1 at one parameter value.
    Curvature {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Sample steps+1 equally spaced rows of t,speed,k1,K1 as CSV.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Arc length over [t0, t1].
    Length {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
    },
    /// Total first curvature over [a, b], or over the whole line with --improper.
    TotalCurvature {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, requires = "b", conflicts_with = "improper")]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        b: Option<f64>,
        #[arg(long)]
        improper: bool,
    },
    /// Classify the total first curvature as finite or infinite, with certificate.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Run the invariant battery; exit status 0 iff every check passes.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        quick: bool,
    },
}

/// What a CLI invocation produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(status: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { status, stdout: String::new(), stderr }
    }
}

fn error_status(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn integral_lines(key: &str, r: &IntegralResult) -> String {
    format!(
        "{key}={}\nerror_estimate={}\nevals={}\nconverged={}\n",
        g17(r.value),
        g17(r.error_estimate),
        r.evals,
        r.converged
    )
}

fn integral_outcome(key: &str, r: IntegralResult) -> Outcome {
    let mut out = Outcome::ok(integral_lines(key, &r));
    if !r.converged {
        out.status = EXIT_NOT_CONVERGED;
        out.stderr = "quadrature did not converge\n".into();
    }
    out
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::fail(error_status(&e), format!("error: {e}")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let spec = |n: usize| CurveSpec::with_cap(n, cli.max_n);
    let cfg = QuadConfig::default();
    match &cli.command {
        Command::Roots { n } => Ok(Outcome::ok(spec(*n)?.roots().to_table())),
        Command::Eval { n, t, deriv } => {
            let p = curve_derivative(&spec(*n)?, *t, *deriv)?;
            Ok(Outcome::ok(format!("{}\n", csv_row(p.coords()))))
        }
        Command::Curvature { n, t } => {
            let s = spec(*n)?;
            if !t.is_finite() {
                return Err(Error::InvalidArgument(format!("t must be finite, got {t}")));
            }
            let row = sample(&s, *t);
            Ok(Outcome::ok(format!("{}\n{}\n", CurvatureSample::CSV_HEADER, row.to_csv_row())))
        }
        Command::Sample { n, t0, t1, steps, out } => {
            let rows = sample_range(&spec(*n)?, *t0, *t1, *steps)?;
            let csv = samples_to_csv(&rows);
            match out {
                None => Ok(Outcome::ok(csv)),
                Some(path) => {
                    std::fs::write(path, csv)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Outcome {
                        status: EXIT_OK,
                        stdout: String::new(),
                        stderr: format!("wrote {} rows to {}\n", rows.len(), path.display()),
                    })
                }
            }
        }
        Command::Length { n, t0, t1 } => Ok(integral_outcome("length", arc_length(&spec(*n)?, *t0, *t1, &cfg)?)),
        Command::TotalCurvature { n, a, b, improper } => {
            let s = spec(*n)?;
            match (a, b, improper) {
                (Some(a), Some(b), false) => {
                    Ok(integral_outcome("total_curvature", truncated_total_curvature(&s, *a, *b, &cfg)?))
                }
                (None, None, true) => {
                    let verdict = classify(&s, &cfg)?;
                    let mut out = Outcome::ok(format!("{}\n{}", verdict.to_key_values(), verdict.to_text()));
                    if !verdict.converged() {
                        out.status = EXIT_NOT_CONVERGED;
                        out.stderr = "quadrature did not converge\n".into();
                    }
                    Ok(out)
                }
                _ => Err(Error::InvalidArgument("give either --a and --b, or --improper".into())),
            }
        }
        Command::Classify { n, format } => {
            let verdict = classify(&spec(*n)?, &cfg)?;
            let text = match format {
                Format::Kv => verdict.to_key_values(),
                Format::Text => verdict.to_text(),
            };
            let mut out = Outcome::ok(text);
            if !verdict.converged() {
                out.status = EXIT_NOT_CONVERGED;
                out.stderr = "quadrature did not converge\n".into();
            }
            Ok(out)
        }
        Command::Verify { n, quick } => {
            let report = verify_battery(&spec(*n)?, *quick, &cfg);
            let status = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Outcome { status, stdout: report.to_text(), stderr: String::new() })
        }
    }
}

//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch or a `suite`
//! check fails, 2 on any usage, parse or evaluation error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::{eval_expr, parse, run_verify, DslError, EvalOptions, Expr, VerifyReport};
use crate::identities::{franklin_orbits, pentagonal_census, OrbitEntry};
use crate::partition::FranklinClass;
use crate::series::XQSeries;
use crate::suite::run_suite;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qfranklin",
    version,
    about = "Exact truncated q-series and Franklin's involution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Orders {
    /// Highest power of q kept.
    #[arg(long)]
    qorder: usize,
    /// Highest power of x kept; defaults to qorder+1 when x occurs, else 0.
    #[arg(long)]
    xorder: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Non-increasing-valuation terms tolerated before an infinite sum is
    /// rejected as divergent.
    #[arg(long, default_value_t = 8)]
    guard_window: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print the truncated series.
    Eval {
        expr: String,
        #[command(flatten)]
        orders: Orders,
    },
    /// Compare two expressions coefficientwise.
    Verify {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        orders: Orders,
    },
    /// Run the built-in identity checks.
    Suite {
        #[arg(long)]
        qorder: usize,
        #[arg(long)]
        xorder: usize,
        #[arg(long, default_value_t = 8)]
        guard_window: usize,
    },
    /// List Franklin orbits or the pentagonal census.
    Franklin {
        #[arg(long)]
        max_weight: usize,
        #[arg(long, conflicts_with = "census")]
        orbits: bool,
        #[arg(long)]
        census: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn default_xorder(qorder: usize, exprs: &[&Expr]) -> usize {
    if exprs.iter().any(|e| e.mentions_x()) {
        qorder + 1
    } else {
        0
    }
}

fn decimal_strings<'a>(cs: impl IntoIterator<Item = &'a num_bigint::BigInt>) -> Vec<String> {
    cs.into_iter().map(ToString::to_string).collect()
}

/// JSON rendering of an evaluated series: univariate when `x` plays no part.
pub fn series_json(s: &XQSeries, univariate: bool) -> Value {
    if univariate {
        json!({
            "qorder": s.qorder(),
            "coeffs": decimal_strings(s.x0_column().coeffs()),
        })
    } else {
        let rows: Vec<Vec<String>> = s.rows().iter().map(decimal_strings).collect();
        json!({ "qorder": s.qorder(), "xorder": s.xorder(), "rows": rows })
    }
}

fn report_json(r: &VerifyReport) -> Value {
    json!({
        "status": if r.is_equal() { "equal" } else { "mismatch" },
        "qorder": r.qorder,
        "xorder": r.xorder,
        "first_mismatch": r.first_mismatch.as_ref().map(|m| json!({
            "x_exp": m.x_exp,
            "q_exp": m.q_exp,
            "lhs": m.lhs.to_string(),
            "rhs": m.rhs.to_string(),
        })),
    })
}

fn class_json(class: FranklinClass) -> (&'static str, Option<usize>) {
    match class {
        FranklinClass::Regular => ("regular", None),
        FranklinClass::ExceptionalEmpty => ("exceptional-empty", None),
        FranklinClass::ExceptionalFirst(r) => ("exceptional-first", Some(r)),
        FranklinClass::ExceptionalSecond(r) => ("exceptional-second", Some(r)),
    }
}

fn eval_command(src: &str, orders: &Orders, out: &mut dyn Write) -> Result<i32, CliError> {
    let expr = parse(src)?;
    let xorder = orders.xorder.unwrap_or_else(|| default_xorder(orders.qorder, &[&expr]));
    let opts = EvalOptions {
        guard_window: orders.guard_window,
    };
    let value = eval_expr(&expr, orders.qorder, xorder, opts)?;
    let univariate = !expr.mentions_x();
    let text = match orders.format {
        Format::Json => series_json(&value, univariate).to_string(),
        Format::Text if univariate => value.x0_column().to_string(),
        Format::Text => value.to_string(),
    };
    writeln!(out, "{text}")?;
    Ok(EXIT_OK)
}

fn verify_command(lhs: &str, rhs: &str, orders: &Orders, out: &mut dyn Write) -> Result<i32, CliError> {
    let xorder = match orders.xorder {
        Some(d) => d,
        None => default_xorder(orders.qorder, &[&parse(lhs)?, &parse(rhs)?]),
    };
    let opts = EvalOptions {
        guard_window: orders.guard_window,
    };
    let report = run_verify(lhs, rhs, orders.qorder, xorder, opts)?;
    let text = match (orders.format, &report.first_mismatch) {
        (Format::Json, _) => report_json(&report).to_string(),
        (Format::Text, None) => format!("equal (qorder {}, xorder {})", report.qorder, report.xorder),
        (Format::Text, Some(m)) => m.to_string(),
    };
    writeln!(out, "{text}")?;
    Ok(if report.is_equal() { EXIT_OK } else { EXIT_MISMATCH })
}

fn franklin_command(max_weight: usize, census: bool, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    if census {
        let rows = pentagonal_census(max_weight);
        if format == Format::Json {
            return writeln!(out, "{}", json!({ "max_weight": max_weight, "rows": rows }));
        }
        writeln!(out, "weight signed_count predicted witness")?;
        for row in rows {
            let witness = row.witness.map_or_else(|| "-".to_string(), |w| w.to_string());
            writeln!(out, "{} {} {} {}", row.weight, row.signed_count, row.predicted, witness)?;
        }
        return Ok(());
    }
    let orbits = franklin_orbits(max_weight);
    if format == Format::Json {
        let entries: Vec<Value> = orbits
            .iter()
            .map(|e| match e {
                OrbitEntry::Pair { weight, lambda, image } => {
                    json!({ "weight": weight, "lambda": lambda, "image": image, "class": "regular", "r": null })
                }
                OrbitEntry::Fixed {
                    weight,
                    partition,
                    class,
                } => {
                    let (name, r) = class_json(*class);
                    json!({ "weight": weight, "lambda": partition, "image": null, "class": name, "r": r })
                }
            })
            .collect();
        return writeln!(out, "{}", json!({ "max_weight": max_weight, "orbits": entries }));
    }
    for e in orbits {
        match e {
            OrbitEntry::Pair { weight, lambda, image } => writeln!(out, "{weight}: {lambda} <-> {image}")?,
            OrbitEntry::Fixed {
                weight,
                partition,
                class,
            } => writeln!(out, "{weight}: {partition} fixed ({class})")?,
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { expr, orders } => eval_command(&expr, &orders, out),
        Command::Verify { lhs, rhs, orders } => verify_command(&lhs, &rhs, &orders, out),
        Command::Suite {
            qorder,
            xorder,
            guard_window,
        } => {
            let outcomes = run_suite(qorder, xorder, EvalOptions { guard_window });
            let mut all = true;
            for o in &outcomes {
                all &= o.passed;
                let tag = if o.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} {}: {}", o.name, o.detail);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            writeln!(out, "{passed}/{} checks passed", outcomes.len())
                .map(|()| if all { EXIT_OK } else { EXIT_MISMATCH })
                .map_err(CliError::from)
        }
        Command::Franklin {
            max_weight,
            census,
            format,
            ..
        } => franklin_command(max_weight, census, format, out)
            .map(|()| EXIT_OK)
            .map_err(CliError::from),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_ERROR
    })
}

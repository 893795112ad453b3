//! `stada`: seeded verification suites, expression evaluation and residual
//! reports on the command line.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 usage or input error.

mod residual;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use stada::literal::{format, BasisSymbol};
use stada::suite::{run_suite, Bound, RunReport, Status, Suite, SuiteSpec};
use stada::{Backend, Error};

pub(crate) const REPORT_DIR_VAR: &str = "STADA_REPORT_DIR";

/// `println!` that stops quietly when stdout is closed (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}
pub(crate) use say;

#[derive(Parser)]
#[command(name = "stada", version, about = "Cross-checked Clifford algebra and Dirac equation engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded check battery and emit a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a multivector expression exactly.
    Eval(EvalArgs),
    /// Residual of a state under one form of the Dirac equation.
    Residual(residual::ResidualArgs),
    /// Summarize a JSON report written by `verify` or `residual`.
    Report(ReportArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// algebra, hodge, spin, representation, fields, equations or all.
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    backend: Backend,
    /// Random samples per check.
    #[arg(long, default_value_t = 20)]
    iterations: usize,
    /// Override the float tolerance of every check.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Where to write the JSON report (default: $STADA_REPORT_DIR if set).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report on stdout instead of one line per check.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// e.g. "e0 * e1", "star(e)", "rev(e01 + 2 e3)".
    expr: String,
    /// Letter used for printed basis blades.
    #[arg(long, default_value = "e")]
    basis: BasisSymbol,
}

#[derive(Args)]
struct ReportArgs {
    path: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval(args) => eval(args),
        Command::Residual(args) => residual::run(args),
        Command::Report(args) => report(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool, Error> {
    let spec = SuiteSpec {
        suite: args.suite,
        seed: args.seed,
        backend: args.backend,
        iterations: args.iterations,
        tolerance: args.tolerance,
    };
    let report = run_suite(&spec)?;
    let json = report.to_json_pretty();
    let default_name = format!("verify-{}-{}-seed{}.json", spec.suite.name(), spec.backend, spec.seed);
    if let Some(path) = report_path(args.report, &default_name) {
        write_report(&path, &json)?;
    }
    if args.json {
        say!("{json}");
    } else {
        print_run(&report);
    }
    Ok(report.passed())
}

fn print_run(report: &RunReport) {
    for r in &report.records {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        say!("{status} {:<34} {:>11.3e} {:<18} {}", r.id, r.measured, bound_text(&r.bound), r.detail);
    }
    let s = &report.summary;
    say!("{}/{} checks passed", s.passed, s.total);
}

fn bound_text(b: &Bound) -> String {
    match b {
        Bound::AtMost(x) if *x == 0.0 => "exact".into(),
        Bound::AtMost(x) => format!("<= {x:e}"),
        Bound::Within(lo, hi) => format!("in [{lo}, {hi}]"),
    }
}

fn eval(args: EvalArgs) -> Result<bool, Error> {
    let value = stada::expr::evaluate(&args.expr)?;
    say!("{}", format(&value, args.basis));
    Ok(true)
}

/// Explicit path, else `$STADA_REPORT_DIR/<default_name>`, else none.
pub(crate) fn report_path(explicit: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os(REPORT_DIR_VAR).map(|dir| Path::new(&dir).join(default_name)))
}

pub(crate) fn write_report(path: &Path, json: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, format!("{json}\n"))?;
    Ok(())
}

fn report(args: ReportArgs) -> Result<bool, Error> {
    let text = std::fs::read_to_string(&args.path)?;
    let v: Value = serde_json::from_str(&text)?;
    if let Some(records) = v.get("records").and_then(Value::as_array) {
        let mut passed = 0;
        for r in records {
            let status = r["status"].as_str().unwrap_or("?");
            if status == "pass" {
                passed += 1;
            }
            say!("{:<4} {:<34} {}", status.to_uppercase(), r["id"].as_str().unwrap_or("?"), r["measured"]);
        }
        say!("{passed}/{} checks passed", records.len());
        return Ok(passed == records.len());
    }
    if let Some(verdict) = v.get("verdict").and_then(Value::as_str) {
        say!(
            "{} residual ({}): max norm {} against tolerance {} -> {verdict}",
            v["form"].as_str().unwrap_or("?"),
            v["backend"].as_str().unwrap_or("?"),
            v["max_norm"],
            v["tolerance"],
        );
        return Ok(verdict == "pass");
    }
    Err(Error::Malformed(format!("{} is neither a run report nor a residual report", args.path.display())))
}

//! The `ttmrhs` command line: `solve` for one system, `bench` for residual
//! and timing tables.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 solver breakdown
//! (`solve` only; `bench` records breakdowns as `FAIL(<error>)` cells).

pub mod bench;
pub mod csvio;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::metrics::{
    columnwise_solve, dense_oracle_solve, relative_residual, timed_run, Method, ReportDiagnostics,
    SolveReport,
};
use crate::smw::solve_mrhs;
use crate::types::{DenseMatrix, TridiagToeplitz};

pub use bench::{BenchRow, ExampleKind};
pub use csvio::{read_rhs_csv, write_matrix_csv, CsvError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BREAKDOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ttmrhs",
    version,
    about = "Tridiagonal Toeplitz solver for multiple right-hand sides"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve T X = B once and report the relative residual.
    Solve(SolveArgs),
    /// Regenerate residual/timing tables over (n, m) pairs with B = ones(n, m).
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    /// Main diagonal value.
    #[arg(long, allow_negative_numbers = true)]
    pub diag: Option<f64>,
    /// Superdiagonal value.
    #[arg(long, allow_negative_numbers = true)]
    pub sup: Option<f64>,
    /// Subdiagonal value.
    #[arg(long, allow_negative_numbers = true)]
    pub sub: Option<f64>,
}

impl BandArgs {
    fn any(&self) -> bool {
        self.diag.is_some() || self.sup.is_some() || self.sub.is_some()
    }

    fn matrix(&self, n: usize) -> Result<TridiagToeplitz, String> {
        match (self.sub, self.diag, self.sup) {
            (Some(sub), Some(diag), Some(sup)) => {
                TridiagToeplitz::new(n, sub, diag, sup).map_err(|e| e.to_string())
            }
            _ => Err("--diag, --sup and --sub must all be given".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Matrix order (required unless taken from an RHS file).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of right-hand sides (required with `--rhs ones`).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub bands: BandArgs,
    /// Grcar matrix (sub = -1, diag = 1, sup = 1).
    #[arg(long, conflicts_with_all = ["example2", "diag", "sup", "sub"])]
    pub grcar: bool,
    /// Zero-diagonal matrix (sub = 1, diag = 0, sup = 2).
    #[arg(long, conflicts_with_all = ["diag", "sup", "sub"])]
    pub example2: bool,
    /// `ones` or the path of a CSV matrix.
    #[arg(long, default_value = "ones")]
    pub rhs: String,
    #[arg(long, default_value = "alg1")]
    pub method: Method,
    /// Where to write X: a path or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub out: String,
    #[arg(long, value_enum, default_value = "json")]
    pub report: ReportFormat,
    /// Where to write the report: a path, `stdout` or `stderr`. Defaults to
    /// stdout when X goes to a file, otherwise stderr.
    #[arg(long)]
    pub report_out: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Solve(args) => cmd_solve(&args, stdout, stderr),
        Command::Bench(args) => bench::cmd_bench(&args, stdout, stderr),
    }
}

/// Runs one method; the diagnostics are only populated for `alg1`.
pub fn run_method(
    method: Method,
    t: &TridiagToeplitz,
    b: &DenseMatrix,
) -> Result<(DenseMatrix, Option<ReportDiagnostics>), Error> {
    match method {
        Method::Alg1 => {
            let out = solve_mrhs(t, b)?;
            let d = out.diagnostics;
            let diag = ReportDiagnostics {
                capacitance_condition: d.capacitance_condition,
                transpose_solves: d.transpose_solves,
                forward_solves: d.forward_solves,
            };
            Ok((out.x, Some(diag)))
        }
        Method::Columnwise => Ok((columnwise_solve(t, b)?, None)),
        Method::DenseOracle => Ok((dense_oracle_solve(t, b)?, None)),
    }
}

fn usage(stderr: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(stderr, "error: {msg}");
    EXIT_USAGE
}

fn solver_error(stderr: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {}: {e}", e.name());
    if e.is_breakdown() {
        EXIT_BREAKDOWN
    } else {
        EXIT_USAGE
    }
}

fn resolve_system(args: &SolveArgs) -> Result<(TridiagToeplitz, DenseMatrix), String> {
    let b = if args.rhs == "ones" {
        let n = args.n.ok_or("--n is required with --rhs ones")?;
        let m = args.m.ok_or("--m is required with --rhs ones")?;
        if n == 0 || m == 0 {
            return Err("--n and --m must be positive".into());
        }
        DenseMatrix::ones(n, m)
    } else {
        let b = read_rhs_csv(&args.rhs).map_err(|e| e.to_string())?;
        if let Some(n) = args.n.filter(|&n| n != b.rows()) {
            return Err(format!(
                "--n {n} does not match {} rows in {}",
                b.rows(),
                args.rhs
            ));
        }
        if let Some(m) = args.m.filter(|&m| m != b.cols()) {
            return Err(format!(
                "--m {m} does not match {} columns in {}",
                b.cols(),
                args.rhs
            ));
        }
        b
    };
    let n = b.rows();
    let t = if args.grcar {
        TridiagToeplitz::grcar(n).map_err(|e| e.to_string())?
    } else if args.example2 {
        TridiagToeplitz::symbol021(n).map_err(|e| e.to_string())?
    } else if args.bands.any() {
        args.bands.matrix(n)?
    } else {
        return Err("choose a matrix: --grcar, --example2 or --diag/--sup/--sub".into());
    };
    Ok((t, b))
}

fn render_report(report: &SolveReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let d = report.diagnostics.as_ref();
            let cond = d
                .and_then(|d| d.capacitance_condition)
                .map(|c| format!("{c:.4e}"))
                .unwrap_or_default();
            format!(
                "method,n,m,relative_residual,time_mean_s,reps,capacitance_condition,transpose_solves,forward_solves\n{},{},{},{:.4e},{:.4e},{},{},{},{}\n",
                report.method,
                report.n,
                report.m,
                report.relative_residual,
                report.time_mean_s,
                report.reps,
                cond,
                d.map(|d| d.transpose_solves.to_string()).unwrap_or_default(),
                d.map(|d| d.forward_solves.to_string()).unwrap_or_default(),
            )
        }
    }
}

fn write_to(
    target: &str,
    text: &[u8],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> std::io::Result<()> {
    match target {
        "stdout" => stdout.write_all(text),
        "stderr" => stderr.write_all(text),
        path => fs::write(path, text),
    }
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (t, b) = match resolve_system(args) {
        Ok(sys) => sys,
        Err(msg) => return usage(stderr, msg),
    };
    let reps = args.reps as usize;
    let (timing, result) = timed_run(reps, || run_method(args.method, &t, &b));
    let (x, diagnostics) = match result {
        Ok(r) => r,
        Err(e) => return solver_error(stderr, &e),
    };
    let residual = match relative_residual(&t, &x, &b) {
        Ok(r) => r,
        Err(e) => return solver_error(stderr, &e),
    };
    let report = SolveReport {
        method: args.method,
        n: b.rows(),
        m: b.cols(),
        relative_residual: residual,
        time_mean_s: timing.mean_s,
        reps,
        diagnostics,
    };

    let mut xbuf = Vec::new();
    write_matrix_csv(&x, &mut xbuf).expect("write to memory");
    if let Err(e) = write_to(&args.out, &xbuf, stdout, stderr) {
        return usage(stderr, format!("{}: {e}", args.out));
    }
    let report_target = args.report_out.clone().unwrap_or_else(|| {
        if args.out == "stdout" {
            "stderr".into()
        } else {
            "stdout".into()
        }
    });
    let text = render_report(&report, args.report);
    if let Err(e) = write_to(&report_target, text.as_bytes(), stdout, stderr) {
        return usage(stderr, format!("{report_target}: {e}"));
    }
    EXIT_OK
}

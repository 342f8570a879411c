use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use clap::{Args, ValueEnum};

use super::{run_method, usage, BandArgs, EXIT_OK, EXIT_USAGE};
use crate::metrics::{relative_residual, timed_run, Method, DEFAULT_REPS};
use crate::types::{DenseMatrix, TridiagToeplitz};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    /// Grcar matrix.
    #[value(name = "1")]
    Grcar,
    /// (sub, diag, sup) = (1, 0, 2).
    #[value(name = "2")]
    Symbol021,
    /// Bands from --diag/--sup/--sub.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub example: ExampleArg,
    /// Comma separated `n:m` pairs, e.g. `10:2,10:8`.
    #[arg(long, conflicts_with_all = ["n_list", "m_list"])]
    pub pairs: Option<String>,
    /// Comma separated orders; crossed with --m-list.
    #[arg(long, requires = "m_list")]
    pub n_list: Option<String>,
    /// Comma separated RHS counts; crossed with --n-list.
    #[arg(long, requires = "n_list")]
    pub m_list: Option<String>,
    #[arg(long, default_value_t = DEFAULT_REPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    /// Comma separated subset of alg1, columnwise, dense.
    #[arg(long, default_value = "alg1,columnwise")]
    pub methods: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
    #[command(flatten)]
    pub bands: BandArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleKind {
    Grcar,
    Symbol021,
    Custom,
}

impl fmt::Display for ExampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleKind::Grcar => "grcar",
            ExampleKind::Symbol021 => "symbol021",
            ExampleKind::Custom => "custom",
        })
    }
}

/// One `(n, m, method)` cell. `residual` holds the error name when the
/// solver broke down.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub example: ExampleKind,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub residual: Result<f64, String>,
    pub time_mean_s: f64,
    pub reps: usize,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "example,n,m,method,relative_residual,time_mean_s,reps";

    pub fn residual_cell(&self) -> String {
        match &self.residual {
            Ok(r) => format!("{r:.4e}"),
            Err(name) => format!("FAIL({name})"),
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.4e},{}",
            self.example,
            self.n,
            self.m,
            self.method,
            self.residual_cell(),
            self.time_mean_s,
            self.reps
        )
    }

    pub fn to_markdown(&self) -> String {
        format!(
            "| {} | {} | {} | {} | {} | {:.4e} | {} |",
            self.example,
            self.n,
            self.m,
            self.method,
            self.residual_cell(),
            self.time_mean_s,
            self.reps
        )
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|v| {
            let v = v.trim();
            match v.parse::<usize>() {
                Ok(x) if x > 0 => Ok(x),
                _ => Err(format!("invalid {what} `{v}`")),
            }
        })
        .collect()
}

pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .map(|p| {
            let (n, m) = p
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("pair `{p}` is not of the form n:m"))?;
            let n = parse_list(n, "n")?[0];
            let m = parse_list(m, "m")?[0];
            Ok((n, m))
        })
        .collect()
}

fn grid(args: &BenchArgs) -> Result<BTreeSet<(usize, usize)>, String> {
    let pairs = match (&args.pairs, &args.n_list, &args.m_list) {
        (Some(p), _, _) => parse_pairs(p)?,
        (None, Some(ns), Some(ms)) => {
            let ns = parse_list(ns, "n")?;
            let ms = parse_list(ms, "m")?;
            ns.iter()
                .flat_map(|&n| ms.iter().map(move |&m| (n, m)))
                .collect()
        }
        _ => return Err("give --pairs or both --n-list and --m-list".into()),
    };
    Ok(pairs.into_iter().collect())
}

fn methods(s: &str) -> Result<BTreeSet<Method>, String> {
    s.split(',').map(|m| m.trim().parse()).collect()
}

fn matrix(args: &BenchArgs, n: usize) -> Result<(ExampleKind, TridiagToeplitz), String> {
    match args.example {
        ExampleArg::Grcar => Ok((
            ExampleKind::Grcar,
            TridiagToeplitz::grcar(n).map_err(|e| e.to_string())?,
        )),
        ExampleArg::Symbol021 => Ok((
            ExampleKind::Symbol021,
            TridiagToeplitz::symbol021(n).map_err(|e| e.to_string())?,
        )),
        ExampleArg::Custom => Ok((ExampleKind::Custom, args.bands.matrix(n)?)),
    }
}

/// Runs every cell in `(n asc, m asc, method asc)` order.
pub fn bench_rows(args: &BenchArgs) -> Result<Vec<BenchRow>, String> {
    if args.example != ExampleArg::Custom && args.bands.any() {
        return Err("--diag/--sup/--sub only apply to --example custom".into());
    }
    let cells = grid(args)?;
    let methods = methods(&args.methods)?;
    let reps = args.reps as usize;
    let mut rows = Vec::with_capacity(cells.len() * methods.len());
    for &(n, m) in &cells {
        let (example, t) = matrix(args, n)?;
        let b = DenseMatrix::ones(n, m);
        for &method in &methods {
            let (timing, result) = timed_run(reps, || run_method(method, &t, &b));
            let residual = result
                .and_then(|(x, _)| relative_residual(&t, &x, &b))
                .map_err(|e| e.name().to_string());
            rows.push(BenchRow {
                example,
                n,
                m,
                method,
                residual,
                time_mean_s: timing.mean_s,
                reps,
            });
        }
    }
    Ok(rows)
}

pub fn render(rows: &[BenchRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(BenchRow::CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
        }
        TableFormat::Md => {
            out.push_str("| example | n | m | method | relative error | time (s) | reps |\n");
            out.push_str("|---|---:|---:|---|---:|---:|---:|\n");
            for r in rows {
                out.push_str(&r.to_markdown());
                out.push('\n');
            }
        }
    }
    out
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rows = match bench_rows(args) {
        Ok(rows) => rows,
        Err(msg) => return usage(stderr, msg),
    };
    match stdout.write_all(render(&rows, args.format).as_bytes()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pairs("10:2, 10:8").unwrap(), vec![(10, 2), (10, 8)]);
        assert!(parse_pairs("10").is_err());
        assert!(parse_pairs("10:x").is_err());
        assert!(parse_pairs("0:2").is_err());
    }

    #[test]
    fn row_formatting() {
        let mut row = BenchRow {
            example: ExampleKind::Grcar,
            n: 10,
            m: 2,
            method: Method::Alg1,
            residual: Ok(6.437e-13),
            time_mean_s: 3.6972e-4,
            reps: 10,
        };
        assert_eq!(row.to_csv(), "grcar,10,2,alg1,6.4370e-13,3.6972e-4,10");
        row.residual = Err("CapacitanceSingular".into());
        assert_eq!(row.residual_cell(), "FAIL(CapacitanceSingular)");
        assert!(row
            .to_markdown()
            .starts_with("| grcar | 10 | 2 | alg1 | FAIL("));
    }
}

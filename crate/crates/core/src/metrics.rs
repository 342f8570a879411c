//! Baseline solver, relative residual and the mean-of-repetitions timer.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvers::{dense_gepp_solve, PivotFactorization};
use crate::types::{check_dim, DenseMatrix, TridiagToeplitz};

/// Repetitions per timing measurement unless overridden.
pub const DEFAULT_REPS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Alg1,
    Columnwise,
    DenseOracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Alg1 => "alg1",
            Method::Columnwise => "columnwise",
            Method::DenseOracle => "dense_oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "alg1" => Ok(Method::Alg1),
            "columnwise" => Ok(Method::Columnwise),
            "dense" | "dense_oracle" => Ok(Method::DenseOracle),
            other => Err(format!(
                "unknown method `{other}` (expected alg1, columnwise or dense)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDiagnostics {
    pub capacitance_condition: Option<f64>,
    pub transpose_solves: usize,
    pub forward_solves: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub relative_residual: f64,
    pub time_mean_s: f64,
    pub reps: usize,
    pub diagnostics: Option<ReportDiagnostics>,
}

/// `m` independent order-`n` solves with the 2×2 block solver, sharing one
/// factorization.
pub fn columnwise_solve(t: &TridiagToeplitz, b: &DenseMatrix) -> Result<DenseMatrix> {
    check_dim(t.order(), b.rows())?;
    let f = PivotFactorization::block(t)?;
    let mut x = b.clone();
    for j in 0..x.cols() {
        f.solve_in_place(x.column_mut(j))?;
    }
    Ok(x)
}

/// Dense partial-pivoting solve of `T X = B`.
pub fn dense_oracle_solve(t: &TridiagToeplitz, b: &DenseMatrix) -> Result<DenseMatrix> {
    dense_gepp_solve(&t.assemble_dense(), b)
}

/// `‖B − T X‖_F / ‖B‖_F`.
pub fn relative_residual(t: &TridiagToeplitz, x: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    check_dim(b.rows(), x.rows())?;
    check_dim(b.cols(), x.cols())?;
    let bnorm = b.frobenius_norm();
    if bnorm == 0.0 {
        return Err(Error::DegenerateRhs);
    }
    Ok(b.sub(&t.apply(x)?)?.frobenius_norm() / bnorm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Timing {
    pub mean_s: f64,
    pub samples: Vec<f64>,
}

/// Runs `task` `reps` times back to back and returns the mean wall time,
/// the raw samples and the output of the final run. Nothing is discarded
/// as warm-up.
pub fn timed_run<R>(reps: usize, mut task: impl FnMut() -> R) -> (Timing, R) {
    assert!(reps >= 1, "timed_run needs at least one repetition");
    let mut samples = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let out = task();
        samples.push(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    let mean_s = samples.iter().sum::<f64>() / reps as f64;
    (Timing { mean_s, samples }, last.expect("reps >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smw::solve_mrhs;

    #[test]
    fn columnwise_examples() {
        let t = TridiagToeplitz::new(2, 1.0, 2.0, 1.0).unwrap();
        let x = columnwise_solve(&t, &DenseMatrix::ones(2, 2)).unwrap();
        for v in x.as_slice() {
            assert!((v - 1.0 / 3.0).abs() <= 1e-15);
        }

        let id = TridiagToeplitz::new(3, 0.0, 1.0, 0.0).unwrap();
        let b = DenseMatrix::from_col_major(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(columnwise_solve(&id, &b).unwrap(), b);

        let z = TridiagToeplitz::symbol021(10).unwrap();
        let b = DenseMatrix::ones(10, 4);
        let x = columnwise_solve(&z, &b).unwrap();
        assert!(relative_residual(&z, &x, &b).unwrap() <= 1e-12);
    }

    #[test]
    fn residual_trivial_cases() {
        let t = TridiagToeplitz::new(3, 1.0, 2.0, 1.0).unwrap();
        let x = DenseMatrix::from_col_major(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        let b = t.apply(&x).unwrap();
        assert!(relative_residual(&t, &x, &b).unwrap() <= 1e-15);
        assert_eq!(
            relative_residual(&t, &DenseMatrix::zeros(3, 1), &b).unwrap(),
            1.0
        );
        assert_eq!(
            relative_residual(&t, &x, &DenseMatrix::zeros(3, 1)),
            Err(Error::DegenerateRhs)
        );
    }

    #[test]
    fn residual_scale_invariant() {
        let t = TridiagToeplitz::grcar(8).unwrap();
        let b = DenseMatrix::ones(8, 3);
        let x = DenseMatrix::filled(8, 3, 0.37);
        let r = relative_residual(&t, &x, &b).unwrap();
        for c in [-3.0, 1e-3, 1e5] {
            let rc = relative_residual(&t, &x.scaled(c), &b.scaled(c)).unwrap();
            assert!((r - rc).abs() <= 1e-14 * r.max(1.0));
        }
    }

    #[test]
    fn grcar_table_anchor_cell() {
        let t = TridiagToeplitz::grcar(10).unwrap();
        let b = DenseMatrix::ones(10, 2);
        let x = solve_mrhs(&t, &b).unwrap().x;
        assert!(relative_residual(&t, &x, &b).unwrap() <= 1e-10);
    }

    #[test]
    fn timing_protocol() {
        let (one, out) = timed_run(1, || 42);
        assert_eq!(out, 42);
        assert_eq!(one.samples.len(), 1);
        assert_eq!(one.mean_s, one.samples[0]);

        let mut calls = 0;
        let (ten, _) = timed_run(DEFAULT_REPS, || calls += 1);
        assert_eq!(calls, 10);
        assert_eq!(ten.samples.len(), 10);
        let mean = ten.samples.iter().sum::<f64>() / 10.0;
        assert_eq!(ten.mean_s, mean);
        assert!(ten.mean_s >= 0.0 && ten.samples.iter().all(|s| *s >= 0.0));
    }

    #[test]
    fn method_names() {
        assert_eq!("dense".parse::<Method>().unwrap(), Method::DenseOracle);
        assert_eq!("alg1".parse::<Method>().unwrap(), Method::Alg1);
        assert!("frobnicate".parse::<Method>().is_err());
        assert_eq!(
            serde_json::to_string(&Method::Columnwise).unwrap(),
            "\"columnwise\""
        );
    }
}

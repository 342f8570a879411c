//! Fast solution of tridiagonal Toeplitz systems `T X = B` with many
//! right-hand sides.
//!
//! The `m` columns of `B` are stacked into one long system
//! `(I_m ⊗ T) vec(X) = vec(B)`. Filling the `2m - 2` zeros at the block
//! seams turns the block-diagonal matrix into a full tridiagonal Toeplitz
//! matrix `Â`, and a Sherman-Morrison-Woodbury correction accounts for the
//! fill. Every solve in the pipeline is therefore a Toeplitz solve.
//!
//! Layout:
//!
//! * [`types`]: matrices, vectors, generators, vec/unvec.
//! * [`solvers`]: scalar (Thomas) and 2×2 block LU Toeplitz solvers, plus a
//!   dense partial-pivoting oracle.
//! * [`expansion`]: the lifted matrix `Â` and its junction corrections.
//! * [`smw`]: dual solves, capacitance matrix and the multiple-RHS driver.
//! * [`metrics`]: column-wise baseline, relative residual, timing.
//! * [`cli`]: CSV/JSON I/O and the `solve`/`bench` commands.

pub mod cli;
pub mod error;
pub mod expansion;
pub mod metrics;
pub mod smw;
pub mod solvers;
pub mod types;

pub use error::{Error, Result};
pub use expansion::{expand, ExpandedSystem, Junction, JunctionCorrection};
pub use metrics::{columnwise_solve, relative_residual, timed_run, Method, SolveReport, Timing};
pub use smw::{solve_mrhs, CapacitanceSystem, SolveOutcome};
pub use solvers::{block_lu_solve, dense_gepp_solve, solve_transpose, thomas_solve};
pub use types::{unvec, vec, ColumnVector, DenseMatrix, TridiagToeplitz};

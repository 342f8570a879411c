//! Multiple right-hand-side driver built on the Sherman-Morrison-Woodbury
//! identity.
//!
//! From `I_m ⊗ T = Â − Σ_j (α_{jn} e_{jn+1}ᵀ + β_{jn+1} e_{jn}ᵀ)` we get
//! `(I_m ⊗ T) x = Q Â x` with
//!
//! ```text
//! Q = I − Σ_j ( α_{jn} y_{jn+1}ᵀ + β_{jn+1} y_{jn}ᵀ ),   Âᵀ y_i = e_i.
//! ```
//!
//! `Q = I + U Vᵀ` has rank `N = 2(m−1)` beyond the identity, so
//! `Q⁻¹ = I − U M⁻¹ Vᵀ` with the `N×N` capacitance matrix `M = I + Vᵀ U`.
//! The solve is then
//!
//! 1. `Â` and the junctions from [`expand`],
//! 2. `2m − 2` dual solves `Âᵀ y_i = e_i`,
//! 3. `M` and `φ = Q⁻¹ vec(B)`,
//! 4. one Toeplitz solve `Â x = φ`,
//! 5. `X = unvec(x)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{expand, ExpandedSystem};
use crate::solvers::{condition_1, dense_gepp_solve, PivotFactorization};
use crate::types::{check_dim, unvec, vec, ColumnVector, DenseMatrix, TridiagToeplitz};

/// A column with a single nonzero entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseColumn {
    /// 0-based row.
    pub pos: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacitanceSystem {
    /// `u_{2j−1} = −sup·e_{jn}`, `u_{2j} = −sub·e_{jn+1}`.
    pub u: Vec<SparseColumn>,
    /// `v_{2j−1} = y_{jn+1}`, `v_{2j} = y_{jn}`, one column each.
    pub v: DenseMatrix,
    /// `M = I + Vᵀ U`.
    pub capacitance: DenseMatrix,
}

impl CapacitanceSystem {
    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn order(&self) -> usize {
        self.v.rows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// 1-norm condition number of `M`; `None` when there are no junctions.
    pub capacitance_condition: Option<f64>,
    pub transpose_solves: usize,
    pub forward_solves: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub x: DenseMatrix,
    pub phi: ColumnVector,
    pub diagnostics: Diagnostics,
}

/// Right-hand sides of the dual solves, in the column order of `V`.
fn dual_rhs(sys: &ExpandedSystem) -> DenseMatrix {
    let order = sys.order();
    let mut e = DenseMatrix::zeros(order, 2 * sys.corrections.len());
    for (k, corr) in sys.corrections.iter().enumerate() {
        // y_{jn+1} then y_{jn}
        e[(corr.at.sub_pos.0 - 1, 2 * k)] = 1.0;
        e[(corr.at.sup_pos.0 - 1, 2 * k + 1)] = 1.0;
    }
    e
}

/// Solves `Âᵀ y = e_i` for the `2m − 2` junction indices.
pub fn dual_solves(sys: &ExpandedSystem) -> Result<DenseMatrix> {
    let mut y = dual_rhs(sys);
    if y.cols() == 0 {
        return Ok(y);
    }
    let f = PivotFactorization::block(&sys.ahat.transpose())?;
    for j in 0..y.cols() {
        f.solve_in_place(y.column_mut(j))?;
    }
    Ok(y)
}

/// Same as [`dual_solves`] with the independent solves spread over the
/// rayon pool. Output is bitwise identical.
pub fn dual_solves_parallel(sys: &ExpandedSystem) -> Result<DenseMatrix> {
    let mut y = dual_rhs(sys);
    if y.cols() == 0 {
        return Ok(y);
    }
    let f = PivotFactorization::block(&sys.ahat.transpose())?;
    let order = y.rows();
    y.as_mut_slice()
        .par_chunks_mut(order)
        .try_for_each(|col| f.solve_in_place(col))?;
    Ok(y)
}

pub fn build_capacitance(sys: &ExpandedSystem, y: &DenseMatrix) -> Result<CapacitanceSystem> {
    let rank = 2 * sys.corrections.len();
    check_dim(rank, y.cols())?;
    check_dim(sys.order(), y.rows())?;

    let u: Vec<SparseColumn> = sys
        .corrections
        .iter()
        .flat_map(|c| {
            [
                SparseColumn {
                    pos: c.at.sup_pos.0 - 1,
                    value: -c.sup,
                },
                SparseColumn {
                    pos: c.at.sub_pos.0 - 1,
                    value: -c.sub,
                },
            ]
        })
        .collect();

    let mut m = DenseMatrix::identity(rank);
    for (l, ul) in u.iter().enumerate() {
        for k in 0..rank {
            m[(k, l)] += ul.value * y[(ul.pos, k)];
        }
    }
    Ok(CapacitanceSystem {
        u,
        v: y.clone(),
        capacitance: m,
    })
}

/// `φ = Q⁻¹ b = b − U M⁻¹ Vᵀ b`.
pub fn apply_qinv(cap: &CapacitanceSystem, b: &ColumnVector) -> Result<ColumnVector> {
    check_dim(cap.order(), b.len())?;
    let mut phi = b.clone();
    if cap.rank() == 0 {
        return Ok(phi);
    }
    let vtb: Vec<f64> = (0..cap.rank())
        .map(|k| dot(cap.v.column(k), b.as_slice()))
        .collect();
    let z =
        dense_gepp_solve(&cap.capacitance, &ColumnVector::new(vtb).into_matrix()).map_err(|e| {
            match e {
                Error::SingularMatrix => Error::CapacitanceSingular,
                other => other,
            }
        })?;
    for (ul, &zl) in cap.u.iter().zip(z.as_slice()) {
        phi[ul.pos] -= ul.value * zl;
    }
    Ok(phi)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `T X = B` for all columns of `B` through one lifted Toeplitz
/// system.
pub fn solve_mrhs(t: &TridiagToeplitz, b: &DenseMatrix) -> Result<SolveOutcome> {
    solve_mrhs_impl(t, b, false)
}

/// [`solve_mrhs`] with the dual solves run in parallel.
pub fn solve_mrhs_parallel(t: &TridiagToeplitz, b: &DenseMatrix) -> Result<SolveOutcome> {
    solve_mrhs_impl(t, b, true)
}

fn solve_mrhs_impl(t: &TridiagToeplitz, b: &DenseMatrix, parallel: bool) -> Result<SolveOutcome> {
    check_dim(t.order(), b.rows())?;
    let (n, m) = (b.rows(), b.cols());
    let sys = expand(t, m)?;

    let y = if parallel {
        dual_solves_parallel(&sys)?
    } else {
        dual_solves(&sys)?
    };
    let transpose_solves = y.cols();
    let cap = build_capacitance(&sys, &y)?;
    let phi = apply_qinv(&cap, &vec(b))?;

    let mut x = phi.clone();
    PivotFactorization::block(&sys.ahat)?.solve_in_place(x.as_mut_slice())?;

    let capacitance_condition = if cap.rank() > 0 {
        Some(condition_1(&cap.capacitance).map_err(|_| Error::CapacitanceSingular)?)
    } else {
        None
    };
    Ok(SolveOutcome {
        x: unvec(x, n, m)?,
        phi,
        diagnostics: Diagnostics {
            capacitance_condition,
            transpose_solves,
            forward_solves: 1,
        },
    })
}

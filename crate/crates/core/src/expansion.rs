//! The lifted system `(I_m ⊗ T) x = b` and its junction fill.
//!
//! `I_m ⊗ T` is block diagonal, so its first super- and subdiagonals carry
//! `2m − 2` zeros at the block seams. Writing `sup` at `(jn, jn+1)` and `sub`
//! at `(jn+1, jn)` for `j = 1..m−1` yields `Â`, the tridiagonal Toeplitz
//! matrix of order `mn` with the bands of `T`:
//!
//! ```text
//! Â = I_m ⊗ T + Σ_j ( α_{jn} e_{jn+1}ᵀ + β_{jn+1} e_{jn}ᵀ )
//! ```
//!
//! Positions in this module are 1-based.

use crate::error::{Error, Result};
use crate::types::{DenseMatrix, TridiagToeplitz};

/// Largest `m·n` for which [`assemble_a_dense`] will build a dense matrix.
pub const DENSE_LIFT_LIMIT: usize = 2048;

/// Seam `j` between diagonal blocks `j` and `j+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Junction {
    pub j: usize,
    /// `(jn, jn+1)`: receives the superdiagonal value.
    pub sup_pos: (usize, usize),
    /// `(jn+1, jn)`: receives the subdiagonal value.
    pub sub_pos: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionCorrection {
    pub at: Junction,
    pub sup: f64,
    pub sub: f64,
}

pub fn junction_indices(n: usize, m: usize) -> Vec<Junction> {
    (1..m)
        .map(|j| Junction {
            j,
            sup_pos: (j * n, j * n + 1),
            sub_pos: (j * n + 1, j * n),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedSystem {
    pub ahat: TridiagToeplitz,
    pub corrections: Vec<JunctionCorrection>,
    pub n: usize,
    pub m: usize,
}

impl ExpandedSystem {
    pub fn order(&self) -> usize {
        self.n * self.m
    }

    /// Dense `Σ_j` of the junction corrections.
    pub fn corrections_dense(&self) -> Result<DenseMatrix> {
        let order = guard(self.order())?;
        let mut c = DenseMatrix::zeros(order, order);
        for corr in &self.corrections {
            let (r, s) = corr.at.sup_pos;
            c[(r - 1, s - 1)] += corr.sup;
            let (r, s) = corr.at.sub_pos;
            c[(r - 1, s - 1)] += corr.sub;
        }
        Ok(c)
    }
}

/// Lifts `T` for `m` right-hand sides.
pub fn expand(t: &TridiagToeplitz, m: usize) -> Result<ExpandedSystem> {
    if m == 0 {
        return Err(Error::EmptyOrder);
    }
    let n = t.order();
    let corrections = junction_indices(n, m)
        .into_iter()
        .map(|at| JunctionCorrection {
            at,
            sup: t.sup(),
            sub: t.sub(),
        })
        .collect();
    Ok(ExpandedSystem {
        ahat: t.with_order(n * m)?,
        corrections,
        n,
        m,
    })
}

/// Dense `I_m ⊗ T` (test scale only).
pub fn assemble_a_dense(t: &TridiagToeplitz, m: usize) -> Result<DenseMatrix> {
    let n = t.order();
    let order = guard(n * m)?;
    let block = t.assemble_dense();
    let mut a = DenseMatrix::zeros(order, order);
    for b in 0..m {
        for j in 0..n {
            for i in 0..n {
                a[(b * n + i, b * n + j)] = block[(i, j)];
            }
        }
    }
    Ok(a)
}

fn guard(order: usize) -> Result<usize> {
    if order > DENSE_LIFT_LIMIT {
        Err(Error::SizeGuard {
            order,
            limit: DENSE_LIFT_LIMIT,
        })
    } else {
        Ok(order)
    }
}

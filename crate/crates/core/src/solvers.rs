//! Direct solvers for tridiagonal Toeplitz systems.
//!
//! Two pivot-free eliminations share [`PivotFactorization`]:
//!
//! * scalar LU (Thomas): pivots `s₁ = diag`, `s_k = diag − sub·sup/s_{k−1}`.
//!   Breaks down as soon as a pivot vanishes, e.g. on a zero diagonal.
//! * 2×2 block LU: the matrix is split into 2×2 diagonal blocks (plus one
//!   trailing 1×1 block for odd order) and eliminated block by block. Only
//!   the block determinants have to be nonzero, so zero-diagonal matrices
//!   such as `(sub, diag, sup) = (1, 0, 2)` are handled exactly.
//!
//! Both cost `O(order)` per right-hand side once factored. Rows are never
//! swapped; inputs that need pivoting belong to [`dense_gepp_solve`].

use crate::error::{Error, Result};
use crate::types::{check_dim, DenseMatrix, TridiagToeplitz, SINGULAR_RTOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotMode {
    Scalar,
    Block2x2,
}

/// Pivot data for one Toeplitz matrix, reusable across right-hand sides.
///
/// In block mode each 2×2 pivot block has the shape
/// `[[a_k, sup], [sub, diag]]`; only `a_k` changes from block to block, so
/// the factorization keeps `a_k` and the block determinant.
#[derive(Debug, Clone)]
pub struct PivotFactorization {
    t: TridiagToeplitz,
    mode: PivotMode,
    pivots: Vec<f64>,
    dets: Vec<f64>,
    tail: Option<f64>,
}

impl PivotFactorization {
    pub fn scalar(t: &TridiagToeplitz) -> Result<Self> {
        let n = t.order();
        let thr = t.singular_threshold();
        let coupling = t.sub() * t.sup();
        let mut pivots = Vec::with_capacity(n);
        let mut s = t.diag();
        for k in 0..n {
            if k > 0 {
                s = t.diag() - coupling / s;
            }
            if s.is_nan() || s.abs() <= thr {
                return Err(Error::ZeroPivot(k + 1));
            }
            pivots.push(s);
        }
        Ok(Self {
            t: *t,
            mode: PivotMode::Scalar,
            pivots,
            dets: Vec::new(),
            tail: None,
        })
    }

    pub fn block(t: &TridiagToeplitz) -> Result<Self> {
        let n = t.order();
        let thr = t.singular_threshold();
        let (sub, diag, sup) = (t.sub(), t.diag(), t.sup());
        let coupling = sub * sup;
        let nblocks = n / 2;
        let mut pivots = Vec::with_capacity(nblocks);
        let mut dets = Vec::with_capacity(nblocks);
        // (S_{k-1}^{-1})_{22}
        let mut carry = 0.0;
        for k in 0..nblocks {
            let a = if k == 0 {
                diag
            } else {
                diag - coupling * carry
            };
            let det = a * diag - coupling;
            if det.is_nan() || det.abs() <= thr {
                return Err(Error::SingularPivotBlock(k + 1));
            }
            carry = a / det;
            pivots.push(a);
            dets.push(det);
        }
        let tail = if n % 2 == 1 {
            let s = if nblocks == 0 {
                diag
            } else {
                diag - coupling * carry
            };
            if s.is_nan() || s.abs() <= thr {
                return Err(Error::SingularPivotBlock(nblocks + 1));
            }
            Some(s)
        } else {
            None
        };
        Ok(Self {
            t: *t,
            mode: PivotMode::Block2x2,
            pivots,
            dets,
            tail,
        })
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    pub fn mode(&self) -> PivotMode {
        self.mode
    }

    /// Scalar pivots, or the varying `(1,1)` entry of each 2×2 block.
    pub fn pivots(&self) -> &[f64] {
        &self.pivots
    }

    /// Block determinants (block mode only).
    pub fn block_determinants(&self) -> &[f64] {
        &self.dets
    }

    /// Pivot of the trailing 1×1 block when the order is odd (block mode).
    pub fn tail_pivot(&self) -> Option<f64> {
        self.tail
    }

    /// Overwrites `x` (the right-hand side) with the solution.
    pub fn solve_in_place(&self, x: &mut [f64]) -> Result<()> {
        check_dim(self.order(), x.len())?;
        match self.mode {
            PivotMode::Scalar => self.scalar_sweep(x),
            PivotMode::Block2x2 => self.block_sweep(x),
        }
        Ok(())
    }

    pub fn solve(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim(self.order(), rhs.rows())?;
        let mut x = rhs.clone();
        for j in 0..x.cols() {
            self.solve_in_place(x.column_mut(j))?;
        }
        Ok(x)
    }

    fn scalar_sweep(&self, x: &mut [f64]) {
        let n = x.len();
        let (sub, sup) = (self.t.sub(), self.t.sup());
        let s = &self.pivots;
        for k in 1..n {
            x[k] -= sub / s[k - 1] * x[k - 1];
        }
        x[n - 1] /= s[n - 1];
        for k in (0..n - 1).rev() {
            x[k] = (x[k] - sup * x[k + 1]) / s[k];
        }
    }

    fn block_sweep(&self, x: &mut [f64]) {
        let (sub, diag, sup) = (self.t.sub(), self.t.diag(), self.t.sup());
        let nblocks = self.pivots.len();
        // S_k^{-1} r for S_k = [[a, sup], [sub, diag]]
        let inv = |k: usize, r0: f64, r1: f64| -> (f64, f64) {
            let (a, det) = (self.pivots[k], self.dets[k]);
            ((diag * r0 - sup * r1) / det, (a * r1 - sub * r0) / det)
        };

        // Forward block elimination: y_k -= L S_{k-1}^{-1} y_{k-1}, where L
        // only touches the first row of the block through the sub entry.
        for k in 1..nblocks {
            let i = 2 * k;
            let (_, z1) = inv(k - 1, x[i - 2], x[i - 1]);
            x[i] -= sub * z1;
        }
        if let Some(tail) = self.tail {
            let i = 2 * nblocks;
            if nblocks > 0 {
                let (_, z1) = inv(nblocks - 1, x[i - 2], x[i - 1]);
                x[i] -= sub * z1;
            }
            x[i] /= tail;
        }

        // Backward substitution: x_k = S_k^{-1} (y_k - U x_{k+1}), where U
        // only couples the last row of block k to the first entry of k+1.
        for k in (0..nblocks).rev() {
            let i = 2 * k;
            let r1 = if i + 2 < x.len() {
                x[i + 1] - sup * x[i + 2]
            } else {
                x[i + 1]
            };
            let (x0, x1) = inv(k, x[i], r1);
            x[i] = x0;
            x[i + 1] = x1;
        }
    }
}

/// Scalar LU (Thomas algorithm) without pivoting.
pub fn thomas_solve(t: &TridiagToeplitz, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    check_dim(t.order(), rhs.rows())?;
    PivotFactorization::scalar(t)?.solve(rhs)
}

/// 2×2 block LU with backward substitution.
pub fn block_lu_solve(t: &TridiagToeplitz, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    check_dim(t.order(), rhs.rows())?;
    PivotFactorization::block(t)?.solve(rhs)
}

/// Solves `Tᵀ Y = rhs` with the block solver on the band-swapped matrix.
pub fn solve_transpose(t: &TridiagToeplitz, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    block_lu_solve(&t.transpose(), rhs)
}

/// Gaussian elimination with partial pivoting on a dense square matrix.
///
/// Reference path for tests and for the small capacitance systems.
pub fn dense_gepp_solve(a: &DenseMatrix, rhs: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    check_dim(n, a.cols())?;
    check_dim(n, rhs.rows())?;
    let thr = SINGULAR_RTOL * a.max_abs().max(1.0);
    let mut lu = a.clone();
    let mut x = rhs.clone();
    let nrhs = x.cols();

    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pmax.is_nan() || pmax <= thr {
            return Err(Error::SingularMatrix);
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            for j in 0..nrhs {
                let tmp = x[(k, j)];
                x[(k, j)] = x[(p, j)];
                x[(p, j)] = tmp;
            }
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] / pivot;
            if l == 0.0 {
                continue;
            }
            lu[(i, k)] = 0.0;
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= l * u;
            }
            for j in 0..nrhs {
                let b = x[(k, j)];
                x[(i, j)] -= l * b;
            }
        }
    }

    for j in 0..nrhs {
        let col = x.column_mut(j);
        for k in (0..n).rev() {
            let mut acc = col[k];
            for c in k + 1..n {
                acc -= lu[(k, c)] * col[c];
            }
            col[k] = acc / lu[(k, k)];
        }
    }
    Ok(x)
}

/// 1-norm condition number `‖A‖₁‖A⁻¹‖₁` using an explicit dense inverse.
/// Only meant for the small capacitance matrices.
pub fn condition_1(a: &DenseMatrix) -> Result<f64> {
    let inv = dense_gepp_solve(a, &DenseMatrix::identity(a.rows()))?;
    Ok(a.norm_1() * inv.norm_1())
}

//! Test-only oracles. Nothing here calls the Toeplitz solvers, so the
//! checks stay independent of the code under test.
#![allow(dead_code)]

use rand::Rng;
use toeplitz_mrhs::{dense_gepp_solve, DenseMatrix, TridiagToeplitz};

/// Random `T` with bands in [-3, 3] and `|diag| ≥ |sub| + |sup| + 1`.
pub fn dominant_toeplitz<R: Rng>(rng: &mut R, n: usize) -> TridiagToeplitz {
    let sub = rng.gen_range(-3.0..=3.0f64);
    let sup = rng.gen_range(-3.0..=3.0f64);
    let mag = sub.abs() + sup.abs() + 1.0 + rng.gen_range(0.0..=3.0);
    let diag = if rng.gen_bool(0.5) { mag } else { -mag };
    TridiagToeplitz::new(n, sub, diag, sup).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(-1.0..=1.0))
        .collect();
    DenseMatrix::from_col_major(rows, cols, data).unwrap()
}

/// Dense tridiagonal Toeplitz matrix built entry by entry from `i − j`.
pub fn dense_toeplitz(order: usize, sub: f64, diag: f64, sup: f64) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(order, order);
    for i in 0..order {
        for j in 0..order {
            a[(i, j)] = match j as i64 - i as i64 {
                0 => diag,
                1 => sup,
                -1 => sub,
                _ => 0.0,
            };
        }
    }
    a
}

/// `I_m ⊗ T` by the Kronecker definition.
pub fn kron_identity(m: usize, t: &TridiagToeplitz) -> DenseMatrix {
    let n = t.order();
    let block = dense_toeplitz(n, t.sub(), t.diag(), t.sup());
    let mut a = DenseMatrix::zeros(n * m, n * m);
    for p in 0..m {
        for q in 0..m {
            if p != q {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    a[(p * n + i, q * n + j)] = block[(i, j)];
                }
            }
        }
    }
    a
}

/// `Q = I − Σ_j (α_{jn} y_{jn+1}ᵀ + β_{jn+1} y_{jn}ᵀ)` with every `y` from a
/// dense GEPP solve of `Âᵀ y = e`.
pub fn dense_q(t: &TridiagToeplitz, m: usize) -> DenseMatrix {
    let n = t.order();
    let order = n * m;
    let ahat_t = dense_toeplitz(order, t.sup(), t.diag(), t.sub());
    let mut q = DenseMatrix::identity(order);
    for j in 1..m {
        // 1-based jn and jn+1 → 0-based jn-1 and jn
        let (r_sup, r_sub) = (j * n - 1, j * n);
        let mut e = DenseMatrix::zeros(order, 2);
        e[(r_sub, 0)] = 1.0;
        e[(r_sup, 1)] = 1.0;
        let y = dense_gepp_solve(&ahat_t, &e).unwrap();
        for c in 0..order {
            q[(r_sup, c)] -= t.sup() * y[(c, 0)];
            q[(r_sub, c)] -= t.sub() * y[(c, 1)];
        }
    }
    q
}

pub fn rel_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let denom = b.frobenius_norm();
    let num = a.sub(b).unwrap().frobenius_norm();
    if denom == 0.0 {
        num
    } else {
        num / denom
    }
}

//! Core value types: the three-scalar Toeplitz matrix, a column-major dense
//! matrix and a plain column vector, together with `vec`/`unvec`.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Relative scale below which a pivot is treated as an exact zero.
pub(crate) const SINGULAR_RTOL: f64 = 1e-300;

/// Tridiagonal Toeplitz matrix of order `n`:
///
/// ```text
/// | diag  sup               |
/// | sub   diag  sup         |
/// |       ...   ...   ...   |
/// |             sub   diag  |
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagToeplitz {
    order: usize,
    sub: f64,
    diag: f64,
    sup: f64,
}

impl TridiagToeplitz {
    pub fn new(order: usize, sub: f64, diag: f64, sup: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyOrder);
        }
        Ok(Self {
            order,
            sub,
            diag,
            sup,
        })
    }

    /// Grcar test matrix: `-1` below, `1` on and above the diagonal.
    pub fn grcar(n: usize) -> Result<Self> {
        Self::new(n, -1.0, 1.0, 1.0)
    }

    /// Matrix generated by the symbol
    /// `c_sub·e^{-iθ} + c_diag + c_sup·e^{iθ}` with the band placement of
    /// `f(θ) = e^{iθ} + 2e^{-iθ} ↦ (sub = 1, diag = 0, sup = 2)`.
    pub fn from_symbol(c_sub: f64, c_diag: f64, c_sup: f64, n: usize) -> Result<Self> {
        Self::new(n, c_sub, c_diag, c_sup)
    }

    /// The zero-diagonal matrix `(sub, diag, sup) = (1, 0, 2)`.
    pub fn symbol021(n: usize) -> Result<Self> {
        Self::from_symbol(1.0, 0.0, 2.0, n)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sub(&self) -> f64 {
        self.sub
    }

    pub fn diag(&self) -> f64 {
        self.diag
    }

    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// Same bands, different order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(order, self.sub, self.diag, self.sup)
    }

    /// `Tᵀ`: sub and sup swapped.
    pub fn transpose(&self) -> Self {
        Self {
            sub: self.sup,
            sup: self.sub,
            ..*self
        }
    }

    pub(crate) fn singular_threshold(&self) -> f64 {
        SINGULAR_RTOL * (self.diag.abs() + self.sub.abs() + self.sup.abs()).max(1.0)
    }

    pub fn assemble_dense(&self) -> DenseMatrix {
        let n = self.order;
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.diag;
            if i + 1 < n {
                a[(i, i + 1)] = self.sup;
                a[(i + 1, i)] = self.sub;
            }
        }
        a
    }

    /// `T · x`, band by band.
    pub fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim(self.order, x.rows())?;
        let n = self.order;
        let mut out = DenseMatrix::zeros(n, x.cols());
        for j in 0..x.cols() {
            let xs = x.column(j);
            let ys = out.column_mut(j);
            for i in 0..n {
                let mut acc = self.diag * xs[i];
                if i > 0 {
                    acc += self.sub * xs[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup * xs[i + 1];
                }
                ys[i] = acc;
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Dense matrix stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, 0.0)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, 1.0)
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = 1.0;
        }
        a
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut a = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            check_dim(ncols, row.len())?;
            for (j, &v) in row.iter().enumerate() {
                a[(i, j)] = v;
            }
        }
        Ok(a)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    /// Column stacking without copying.
    pub fn into_vec(self) -> ColumnVector {
        ColumnVector(self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (k, &b) in rhs.column(j).iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                for (d, &a) in dst.iter_mut().zip(self.column(k)) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `self - rhs`.
    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, c: f64) -> DenseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.cols)
            .map(|j| self.column(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnVector(Vec<f64>);

impl ColumnVector {
    pub fn new(data: Vec<f64>) -> Self {
        Self(data)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    /// `e_i` with a 0-based index.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = 1.0;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// View as a single-column matrix.
    pub fn into_matrix(self) -> DenseMatrix {
        let rows = self.0.len();
        DenseMatrix {
            rows,
            cols: 1,
            data: self.0,
        }
    }
}

impl From<Vec<f64>> for ColumnVector {
    fn from(data: Vec<f64>) -> Self {
        Self(data)
    }
}

impl Index<usize> for ColumnVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ColumnVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

/// Stacks the columns of `x` top to bottom.
pub fn vec(x: &DenseMatrix) -> ColumnVector {
    ColumnVector(x.data.clone())
}

/// Inverse of [`vec`].
pub fn unvec(v: ColumnVector, rows: usize, cols: usize) -> Result<DenseMatrix> {
    DenseMatrix::from_col_major(rows, cols, v.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn assemble_single_entry() {
        let t = TridiagToeplitz::new(1, 9.0, 5.0, 9.0).unwrap();
        assert_eq!(t.assemble_dense(), dense(&[&[5.0]]));
    }

    #[test]
    fn grcar_display() {
        let expected = dense(&[&[1.0, 1.0, 0.0], &[-1.0, 1.0, 1.0], &[0.0, -1.0, 1.0]]);
        assert_eq!(
            TridiagToeplitz::grcar(3).unwrap().assemble_dense(),
            expected
        );
        assert_eq!(
            TridiagToeplitz::grcar(1).unwrap().assemble_dense(),
            dense(&[&[1.0]])
        );
        let g = TridiagToeplitz::grcar(10).unwrap();
        assert_eq!(
            (g.order(), g.sub(), g.diag(), g.sup()),
            (10, -1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn grcar_pattern_small_orders() {
        for n in 1..=6 {
            let a = TridiagToeplitz::grcar(n).unwrap().assemble_dense();
            for i in 0..n {
                for j in 0..n {
                    let want = match j as i64 - i as i64 {
                        0 | 1 => 1.0,
                        -1 => -1.0,
                        _ => 0.0,
                    };
                    assert_eq!(a[(i, j)], want);
                }
            }
        }
    }

    #[test]
    fn symbol_generator() {
        let t = TridiagToeplitz::from_symbol(1.0, 0.0, 2.0, 2).unwrap();
        assert_eq!(t.assemble_dense(), dense(&[&[0.0, 2.0], &[1.0, 0.0]]));
        assert_eq!(t, TridiagToeplitz::symbol021(2).unwrap());
        let id = TridiagToeplitz::from_symbol(0.0, 1.0, 0.0, 4).unwrap();
        assert_eq!(id.assemble_dense(), DenseMatrix::identity(4));
        let s = TridiagToeplitz::from_symbol(1.0, 2.0, 1.0, 2).unwrap();
        assert_eq!(s.assemble_dense(), dense(&[&[2.0, 1.0], &[1.0, 2.0]]));
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(TridiagToeplitz::grcar(0), Err(Error::EmptyOrder));
    }

    #[test]
    fn apply_examples() {
        let t = TridiagToeplitz::new(3, 1.0, 2.0, 1.0).unwrap();
        let x = ColumnVector::new(vec![1.0, 2.0, 3.0]).into_matrix();
        assert_eq!(t.apply(&x).unwrap().as_slice(), &[4.0, 8.0, 8.0]);

        let t = TridiagToeplitz::new(2, -1.0, 1.0, 1.0).unwrap();
        let x = DenseMatrix::ones(2, 1);
        assert_eq!(t.apply(&x).unwrap().as_slice(), &[2.0, 0.0]);

        let id = TridiagToeplitz::new(5, 0.0, 1.0, 0.0).unwrap();
        let x = DenseMatrix::from_col_major(5, 2, (0..10).map(f64::from).collect()).unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn apply_rejects_wrong_rows() {
        let t = TridiagToeplitz::grcar(3).unwrap();
        assert_eq!(
            t.apply(&DenseMatrix::ones(4, 1)),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn vec_and_unvec() {
        let x = dense(&[&[1.0, 3.0], &[2.0, 4.0]]);
        assert_eq!(vec(&x).as_slice(), &[1.0, 2.0, 3.0, 4.0]);
        let back = unvec(ColumnVector::new(vec![1.0, 2.0, 3.0, 4.0]), 2, 2).unwrap();
        assert_eq!(back, x);
        assert_eq!(vec(&dense(&[&[7.0]])).as_slice(), &[7.0]);
        assert!(unvec(ColumnVector::zeros(3), 2, 2).is_err());
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = DenseMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-1e6..1e6f64, r * c)
                .prop_map(move |d| DenseMatrix::from_col_major(r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn unvec_inverts_vec(x in matrix_strategy(64)) {
            let back = unvec(vec(&x), x.rows(), x.cols()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn banded_apply_matches_dense(
            n in 1usize..24,
            cols in 1usize..4,
            sub in -4i32..=4,
            diag in -4i32..=4,
            sup in -4i32..=4,
            seed in prop::collection::vec(-8i32..=8, 24 * 4),
        ) {
            let t = TridiagToeplitz::new(n, sub.into(), diag.into(), sup.into()).unwrap();
            let data = seed[..n * cols].iter().map(|&v| f64::from(v)).collect();
            let x = DenseMatrix::from_col_major(n, cols, data).unwrap();
            let banded = t.apply(&x).unwrap();
            let full = t.assemble_dense().matmul(&x).unwrap();
            prop_assert_eq!(banded, full);
        }
    }
}

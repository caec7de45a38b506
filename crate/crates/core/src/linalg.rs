//! Exact dense linear algebra over a generic field.
//!
//! Everything here is plain Gaussian elimination with exact arithmetic:
//! reduced row echelon form, kernel bases, determinants, and a reusable
//! solver for systems sharing one coefficient matrix. Outputs are canonical
//! (RREF is unique), which the rest of the crate relies on for
//! bit-reproducible results.

use crate::poly::FieldElem;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: FieldElem> Mat<C> {
    pub fn zeros(rows: usize, cols: usize, like: &C) -> Self {
        Mat {
            rows,
            cols,
            data: vec![like.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &C) -> Self {
        let mut m = Self::zeros(n, n, like);
        for i in 0..n {
            *m.at_mut(i, i) = like.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut C {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let like = self.data.first();
        match like {
            None => Mat {
                rows: self.cols,
                cols: self.rows,
                data: Vec::new(),
            },
            Some(like) => {
                let mut out = Self::zeros(self.cols, self.rows, like);
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        *out.at_mut(c, r) = self.at(r, c).clone();
                    }
                }
                out
            }
        }
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = v[0].zero_like();
                for c in 0..self.cols {
                    acc = acc.add_ref(&self.at(r, c).mul_ref(&v[c]));
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let like = &self.data[0];
        let mut out = Self::zeros(self.rows, rhs.cols, like);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero_elem() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.at(r, c).add_ref(&a.mul_ref(rhs.at(k, c)));
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero_elem()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.at(row, col).inv_ref().unwrap();
            for c in col..self.cols {
                let v = self.at(row, c).mul_ref(&inv);
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero_elem() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).sub_ref(&factor.mul_ref(self.at(row, c)));
                    *self.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical kernel basis (one vector per free column of the RREF).
    pub fn kernel_basis(&self) -> Vec<Vec<C>> {
        if self.data.is_empty() {
            // No constraints: kernel is all of C^cols, but with no sample
            // element we cannot mint vectors; callers avoid this case.
            assert_eq!(self.cols, 0, "kernel of empty matrix with columns");
            return Vec::new();
        }
        let like = &self.data[0];
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![like.zero_like(); self.cols];
            vec[free] = like.one_like();
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = m.at(prow, free).neg_ref();
            }
            basis.push(vec);
        }
        basis
    }

    /// Inverse of a square matrix; None when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let like = &self.data[0];
        let mut aug = Self::zeros(n, 2 * n, like);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = like.one_like();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zeros(n, n, like);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }

    /// Determinant by Gaussian elimination (square matrices).
    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let like = &self.data[0];
        let mut m = self.clone();
        let mut det = like.one_like();
        for col in 0..m.cols {
            let Some(pr) = (col..m.rows).find(|&r| !m.at(r, col).is_zero_elem()) else {
                return like.zero_like();
            };
            if pr != col {
                for c in 0..m.cols {
                    m.data.swap(col * m.cols + c, pr * m.cols + c);
                }
                det = det.neg_ref();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul_ref(&pivot);
            let inv = pivot.inv_ref().unwrap();
            for r in col + 1..m.rows {
                if m.at(r, col).is_zero_elem() {
                    continue;
                }
                let factor = m.at(r, col).mul_ref(&inv);
                for c in col..m.cols {
                    let v = m.at(r, c).sub_ref(&factor.mul_ref(m.at(col, c)));
                    *m.at_mut(r, c) = v;
                }
            }
        }
        det
    }
}

/// Solver for `A x = b` reused across many right-hand sides.
///
/// Stores the RREF of `[A | I]`; solving is a matrix-vector product plus a
/// consistency check, and fails (None) exactly when `b` is outside the
/// column span.
pub struct ColumnSolver<C> {
    rref: Mat<C>,
    pivots: Vec<usize>,
    cols: usize,
}

impl<C: FieldElem> ColumnSolver<C> {
    pub fn new(a: &Mat<C>) -> Self {
        let like = a.at(0, 0);
        let mut aug = Mat::zeros(a.rows(), a.cols() + a.rows(), like);
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                *aug.at_mut(r, c) = a.at(r, c).clone();
            }
            *aug.at_mut(r, a.cols() + r) = like.one_like();
        }
        let pivots = aug.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < a.cols()).collect();
        ColumnSolver {
            rref: aug,
            pivots,
            cols: a.cols(),
        }
    }

    /// True when `A` has full column rank (unique solutions when they exist).
    pub fn unique(&self) -> bool {
        self.pivots.len() == self.cols
    }

    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        let like = &b[0];
        let nrows = self.rref.rows();
        // e = E*b where E is the recorded row-operation matrix.
        let e: Vec<C> = (0..nrows)
            .map(|r| {
                let mut acc = like.zero_like();
                for (i, bv) in b.iter().enumerate() {
                    acc = acc.add_ref(&self.rref.at(r, self.cols + i).mul_ref(bv));
                }
                acc
            })
            .collect();
        let mut x = vec![like.zero_like(); self.cols];
        for (row, &col) in self.pivots.iter().enumerate() {
            x[col] = e[row].clone();
        }
        // Rows beyond the pivot rows must vanish or `b` is outside the span.
        for row in self.pivots.len()..nrows {
            if !e[row].is_zero_elem() {
                return None;
            }
        }
        Some(x)
    }
}

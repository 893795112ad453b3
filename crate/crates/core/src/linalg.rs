//! Small dense linear algebra over either coefficient backend.

use nalgebra::DMatrix;

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.data[r * self.cols + c] = value;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).plus(&a.times(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Reduced row echelon form and pivot columns. Entries with magnitude at
    /// most `tol * max|entry|` count as zero (exact zero on the exact backend).
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let threshold = tol * m.max_magnitude();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let best = (row..m.rows)
                .filter(|&r| !m.get(r, col).is_negligible(threshold))
                .max_by(|&a, &b| {
                    m.get(a, col)
                        .magnitude()
                        .partial_cmp(&m.get(b, col).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = best else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip().expect("nonzero pivot");
            for c in 0..m.cols {
                let v = m.get(row, c).times(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let v = m.get(r, c).minus(&factor.times(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &[F], tol: f64) -> Option<Vec<F>> {
        assert_eq!(self.rows, self.cols, "square system");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, rhs[r].clone());
        }
        let (reduced, pivots) = aug.rref(tol);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|r| reduced.get(r, n).clone()).collect())
    }

    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<F> = (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect();
            cols.push(self.solve(&e, tol)?);
        }
        Some(Self::from_columns(&cols))
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.negated();
            }
            let pivot = m.get(col, col).clone();
            det = det.times(&pivot);
            let inv = pivot.recip().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m.get(r, col).times(&inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).minus(&factor.times(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Null-space basis from the reduced row echelon form.
pub fn rref_nullspace<F: Field>(m: &Mat<F>, tol: f64) -> Vec<Vec<F>> {
    let (reduced, pivots) = m.rref(tol);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols()];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = reduced.get(row, f).negated();
            }
            v
        })
        .collect()
}

/// Null-space basis from the SVD: right singular vectors whose singular value
/// is at most `rel_tol` times the largest one.
pub fn svd_nullspace(m: &Mat<f64>, rel_tol: f64) -> Vec<Vec<f64>> {
    let (rows, cols) = (m.rows(), m.cols());
    // pad to at least square so every right singular vector is produced
    let padded = rows.max(cols);
    let a = DMatrix::from_fn(padded, cols, |r, c| if r < rows { *m.get(r, c) } else { 0.0 });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let largest = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rel_tol * largest.max(f64::MIN_POSITIVE);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| vt.row(i).iter().copied().collect())
        .collect()
}

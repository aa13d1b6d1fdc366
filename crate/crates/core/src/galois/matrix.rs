use super::{Elem, FieldContext};

/// Dense row-major matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &FieldContext, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, f: &FieldContext, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend_from_slice(other.row(r));
                row
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Multiplies column `c` by `diag[c]`.
    pub fn scale_columns(&self, f: &FieldContext, diag: &[Elem]) -> Matrix {
        assert_eq!(diag.len(), self.cols);
        let mut out = self.clone();
        for r in 0..self.rows {
            for (v, &d) in out.row_mut(r).iter_mut().zip(diag) {
                *v = f.mul(*v, d);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, f: &FieldContext) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == row || factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FieldContext) -> usize {
        self.rref(f).1.len()
    }

    /// Basis (as rows) of the right kernel `{x : self * x^T = 0}`.
    pub fn nullspace(&self, f: &FieldContext) -> Matrix {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, Elem::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    pub fn inverse(&self, f: &FieldContext) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = (0..n).map(|i| r.row(i)[n..].to_vec()).collect();
        Some(Matrix::from_rows(rows))
    }

    /// Some `x` with `x * self = y`, or `None` when `y` is outside the row space.
    pub fn solve_left(&self, f: &FieldContext, y: &[Elem]) -> Option<Vec<Elem>> {
        if y.len() != self.cols {
            return None;
        }
        let aug = self
            .transpose()
            .hstack(&Matrix::from_vec(self.cols, 1, y.to_vec()));
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.rows];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.rows);
        }
        Some(x)
    }

    pub fn same_row_space(&self, f: &FieldContext, other: &Matrix) -> bool {
        let ra = self.rank(f);
        ra == other.rank(f) && self.vstack(other).rank(f) == ra
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::echelon::{Echelon, SparseVec};
use super::GaussianRational;

/// Sparse exact matrix. Entries are keyed `(row, col)` and zeros are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<GaussianRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(len: usize, columns: &[Vec<GaussianRational>]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> GaussianRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussianRational) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row},{col}) out of bounds"
        );
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &GaussianRational) {
        let current = self.get(row, col);
        self.set(row, col, current + value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].insert(j, v.clone());
        }
        out
    }

    pub fn column(&self, col: usize) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            if j == col {
                out[i] = v.clone();
            }
        }
        out
    }

    /// Conjugate transpose, the adjoint for the standard Hermitian product.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.entries.insert((j, i), v.conj());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.entries.insert((j, i), v.clone());
        }
        m
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        if factor.is_zero() {
            return m;
        }
        for (&k, v) in &self.entries {
            m.entries.insert(k, v * factor);
        }
        m
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let rhs_rows = rhs.row_vectors();
        let mut acc: Vec<SparseVec> = vec![SparseVec::new(); self.rows];
        for (&(i, l), a) in &self.entries {
            for (j, b) in &rhs_rows[l] {
                let term = a * b;
                let slot = acc[i].entry(*j).or_insert_with(GaussianRational::zero);
                *slot += &term;
            }
        }
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for (i, row) in acc.into_iter().enumerate() {
            for (j, v) in row {
                if !v.is_zero() {
                    out.entries.insert((i, j), v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch in sum"
        );
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&-GaussianRational::one())
    }

    /// Stacks `self` above `below`.
    pub fn vstack(&self, below: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, below.cols, "column mismatch in vstack");
        let mut out = ExactMatrix::zeros(self.rows + below.rows, self.cols);
        out.entries = self.entries.clone();
        for (&(i, j), v) in &below.entries {
            out.entries.insert((i + self.rows, j), v.clone());
        }
        out
    }

    /// Places `right` to the right of `self`.
    pub fn hstack(&self, right: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, right.rows, "row mismatch in hstack");
        let mut out = ExactMatrix::zeros(self.rows, self.cols + right.cols);
        out.entries = self.entries.clone();
        for (&(i, j), v) in &right.entries {
            out.entries.insert((i, j + self.cols), v.clone());
        }
        out
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![GaussianRational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += &(a * &v[j]);
            }
        }
        out
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for row in self.row_vectors() {
            if !row.is_empty() {
                e.insert(row);
            }
        }
        e
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        // Eliminate along the shorter side; rank is transpose-invariant.
        if self.cols < self.rows {
            return self.transpose().echelon().rank();
        }
        self.echelon().rank()
    }

    /// A basis of the null space: one vector per free column, in column order,
    /// with a `1` in its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let rref = self.echelon().reduced_rows();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (&pc, row) in &rref {
                if let Some(x) = row.get(&free) {
                    v[pc] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

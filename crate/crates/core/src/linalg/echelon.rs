//! Incremental row echelon form over the Gaussian rationals.
//!
//! Rows are reduced against the existing pivots in increasing column order
//! and normalized so that every stored row has a leading `1`. Optionally each
//! stored row remembers which combination of the inserted vectors produced
//! it, which is what `solve` needs to report coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::GaussianRational;

/// Sparse vector keyed by coordinate index. Never stores zeros.
pub type SparseVec = BTreeMap<usize, GaussianRational>;

fn axpy(target: &mut SparseVec, alpha: &GaussianRational, row: &[(usize, GaussianRational)]) {
    for (col, value) in row {
        let delta = alpha * value;
        match target.get_mut(col) {
            Some(entry) => {
                *entry -= &delta;
                if entry.is_zero() {
                    target.remove(col);
                }
            }
            None => {
                target.insert(*col, -delta);
            }
        }
    }
}

fn scale_into_row(vec: SparseVec, factor: &GaussianRational) -> Vec<(usize, GaussianRational)> {
    vec.into_iter().map(|(k, v)| (k, &v * factor)).collect()
}

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent; it produced a pivot in this column.
    Pivot(usize),
    /// The vector already lay in the span.
    Dependent,
}

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, usize>,
    rows: Vec<Vec<(usize, GaussianRational)>>,
    combos: Option<Vec<Vec<(usize, GaussianRational)>>>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// An echelon that also records, per stored row, the combination of
    /// inserted vectors it came from.
    pub fn with_combinations() -> Self {
        Self {
            combos: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `work` against the stored pivots. When `combo` is supplied the
    /// subtracted multiples of the stored combinations are accumulated into it.
    fn reduce(&self, work: &mut SparseVec, mut combo: Option<&mut SparseVec>) {
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(col, _)| self.pivots.contains_key(col))
                .map(|(col, v)| (*col, v.clone()));
            let Some((col, alpha)) = next else { break };
            let row_idx = self.pivots[&col];
            axpy(work, &alpha, &self.rows[row_idx]);
            if let (Some(acc), Some(combos)) = (combo.as_deref_mut(), self.combos.as_ref()) {
                axpy(acc, &alpha, &combos[row_idx]);
            }
            cursor = col + 1;
        }
    }

    /// Inserts a vector; it becomes input number `self.inserted()`.
    pub fn insert(&mut self, vector: SparseVec) -> Insertion {
        let index = self.inserted;
        self.inserted += 1;
        let mut work = vector;
        let mut combo = SparseVec::new();
        if self.combos.is_some() {
            combo.insert(index, GaussianRational::one());
        }
        let tracking = self.combos.is_some();
        self.reduce(&mut work, if tracking { Some(&mut combo) } else { None });
        let Some((&lead_col, lead)) = work.iter().next() else {
            return Insertion::Dependent;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        self.pivots.insert(lead_col, self.rows.len());
        self.rows.push(scale_into_row(work, &inv));
        if let Some(combos) = self.combos.as_mut() {
            combos.push(scale_into_row(combo, &inv));
        }
        Insertion::Pivot(lead_col)
    }

    pub fn contains(&self, vector: &SparseVec) -> bool {
        let mut work = vector.clone();
        self.reduce(&mut work, None);
        work.is_empty()
    }

    /// Expresses `target` as a combination of the inserted vectors.
    ///
    /// Returns `Err(residual)` with the part of `target` that no combination
    /// reaches. Requires [`Echelon::with_combinations`].
    pub fn solve(&self, target: &SparseVec) -> Result<SparseVec, SparseVec> {
        assert!(self.combos.is_some(), "solve needs combination tracking");
        let mut work = target.clone();
        let mut acc = SparseVec::new();
        self.reduce(&mut work, Some(&mut acc));
        if !work.is_empty() {
            return Err(work);
        }
        // work = target - Σ α·row = 0 and acc = -Σ α·combo, so target = -acc.
        Ok(acc.into_iter().map(|(k, v)| (k, -v)).collect())
    }

    /// Fully reduced rows keyed by pivot column (reduced row echelon form).
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, SparseVec> = self
            .pivots
            .iter()
            .map(|(&col, &idx)| (col, self.rows[idx].iter().cloned().collect()))
            .collect();
        let cols: Vec<usize> = out.keys().copied().rev().collect();
        for &pc in &cols {
            let pivot_row: Vec<(usize, GaussianRational)> =
                out[&pc].iter().map(|(k, v)| (*k, v.clone())).collect();
            for (&other, row) in out.iter_mut() {
                if other >= pc {
                    continue;
                }
                if let Some(alpha) = row.get(&pc).cloned() {
                    axpy(row, &alpha, &pivot_row);
                }
            }
        }
        out
    }
}

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::ExactMatrix;

pub type Bidegree = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("bidegree ({p},{q}) is outside 0..={n}")]
    OutOfRange { p: usize, q: usize, n: usize },
    #[error(
        "{which} at ({p},{q}) has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}"
    )]
    Shape {
        which: &'static str,
        p: usize,
        q: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("{identity} fails at ({p},{q})")]
    Violation {
        p: usize,
        q: usize,
        identity: &'static str,
    },
}

/// A finite double complex: labelled bases `A^{p,q}` for `0 ≤ p, q ≤ n` and
/// the matrices of `∂: A^{p,q} → A^{p+1,q}` and `∂̄: A^{p,q} → A^{p,q+1}`.
///
/// Vectors are columns; the matrix at `(p,q)` has `dim A^{p,q}` columns.
/// Maps leaving the range `0..=n` are stored as zero-row matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    n: usize,
    basis: BTreeMap<Bidegree, Vec<String>>,
    del: BTreeMap<Bidegree, ExactMatrix>,
    delbar: BTreeMap<Bidegree, ExactMatrix>,
}

impl DoubleComplex {
    /// Assembles a complex, filling in absent bidegrees with empty bases and
    /// absent maps with zero matrices. Shapes are checked; the differential
    /// identities are not (see [`DoubleComplex::validate`]).
    pub fn new(
        n: usize,
        mut basis: BTreeMap<Bidegree, Vec<String>>,
        mut del: BTreeMap<Bidegree, ExactMatrix>,
        mut delbar: BTreeMap<Bidegree, ExactMatrix>,
    ) -> Result<Self, ComplexError> {
        for &(p, q) in basis.keys().chain(del.keys()).chain(delbar.keys()) {
            if p > n || q > n {
                return Err(ComplexError::OutOfRange { p, q, n });
            }
        }
        for p in 0..=n {
            for q in 0..=n {
                basis.entry((p, q)).or_default();
            }
        }
        let dim = |b: &BTreeMap<Bidegree, Vec<String>>, p: usize, q: usize| {
            b.get(&(p, q)).map_or(0, Vec::len)
        };
        for p in 0..=n {
            for q in 0..=n {
                let cols = dim(&basis, p, q);
                for (which, maps, target) in [
                    ("del", &mut del, (p + 1, q)),
                    ("delbar", &mut delbar, (p, q + 1)),
                ] {
                    let rows = dim(&basis, target.0, target.1);
                    let m = maps
                        .entry((p, q))
                        .or_insert_with(|| ExactMatrix::zeros(rows, cols));
                    if (m.rows(), m.cols()) != (rows, cols) {
                        return Err(ComplexError::Shape {
                            which,
                            p,
                            q,
                            rows: m.rows(),
                            cols: m.cols(),
                            expected_rows: rows,
                            expected_cols: cols,
                        });
                    }
                }
            }
        }
        Ok(Self {
            n,
            basis,
            del,
            delbar,
        })
    }

    /// A complex with zero differentials and generic labels.
    pub fn with_zero_differentials(
        n: usize,
        dims: &BTreeMap<Bidegree, usize>,
    ) -> Result<Self, ComplexError> {
        let basis = dims
            .iter()
            .map(|(&(p, q), &d)| ((p, q), (0..d).map(|i| format!("e{p}{q}_{i}")).collect()))
            .collect();
        Self::new(n, basis, BTreeMap::new(), BTreeMap::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.basis.get(&(p, q)).map_or(0, Vec::len)
    }

    pub fn labels(&self, p: usize, q: usize) -> &[String] {
        self.basis.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.basis.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// `dim A^k = Σ_{p+q=k} dim A^{p,q}`.
    pub fn degree_dim(&self, k: usize) -> usize {
        self.degree_blocks(k)
            .iter()
            .map(|&(p, q)| self.dim(p, q))
            .sum()
    }

    /// The bidegrees of total degree `k`, in increasing `p`.
    pub fn degree_blocks(&self, k: usize) -> Vec<Bidegree> {
        (0..=k.min(self.n))
            .filter(|&p| k - p <= self.n)
            .map(|p| (p, k - p))
            .collect()
    }

    fn zero_map(&self, p: usize, q: usize) -> ExactMatrix {
        ExactMatrix::zeros(0, self.dim(p, q))
    }

    /// `∂` out of `(p,q)`. Outside the range this is an empty matrix.
    pub fn del(&self, p: usize, q: usize) -> ExactMatrix {
        self.del
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| self.zero_map(p, q))
    }

    /// `∂̄` out of `(p,q)`.
    pub fn delbar(&self, p: usize, q: usize) -> ExactMatrix {
        self.delbar
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| self.zero_map(p, q))
    }

    pub fn del_ref(&self, p: usize, q: usize) -> Option<&ExactMatrix> {
        self.del.get(&(p, q))
    }

    pub fn delbar_ref(&self, p: usize, q: usize) -> Option<&ExactMatrix> {
        self.delbar.get(&(p, q))
    }

    /// `∂` into `(p,q)` from `(p-1,q)`; a `dim × 0` matrix when `p = 0`.
    pub fn del_into(&self, p: usize, q: usize) -> ExactMatrix {
        if p == 0 {
            ExactMatrix::zeros(self.dim(p, q), 0)
        } else {
            self.del(p - 1, q)
        }
    }

    /// `∂̄` into `(p,q)` from `(p,q-1)`.
    pub fn delbar_into(&self, p: usize, q: usize) -> ExactMatrix {
        if q == 0 {
            ExactMatrix::zeros(self.dim(p, q), 0)
        } else {
            self.delbar(p, q - 1)
        }
    }

    /// `d = ∂ + ∂̄ : A^k → A^{k+1}` as a block matrix, blocks ordered by `p`.
    pub fn total_differential(&self, k: usize) -> ExactMatrix {
        let src = self.degree_blocks(k);
        let dst = self.degree_blocks(k + 1);
        let offsets = |blocks: &[Bidegree]| {
            let mut acc = 0;
            blocks
                .iter()
                .map(|&(p, q)| {
                    let o = acc;
                    acc += self.dim(p, q);
                    ((p, q), o)
                })
                .collect::<BTreeMap<_, _>>()
        };
        let (so, dof) = (offsets(&src), offsets(&dst));
        let mut m = ExactMatrix::zeros(self.degree_dim(k + 1), self.degree_dim(k));
        for &(p, q) in &src {
            let col0 = so[&(p, q)];
            for (target, map) in [
                ((p + 1, q), self.del_ref(p, q)),
                ((p, q + 1), self.delbar_ref(p, q)),
            ] {
                let (Some(map), Some(&row0)) = (map, dof.get(&target)) else {
                    continue;
                };
                for (i, j, v) in map.entries() {
                    m.set(row0 + i, col0 + j, v.clone());
                }
            }
        }
        m
    }

    /// Checks `∂² = 0`, `∂̄² = 0` and `∂∂̄ + ∂̄∂ = 0` at every bidegree.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (p, q) in self.bidegrees() {
            let (d, db) = (self.del(p, q), self.delbar(p, q));
            if p < self.n && !self.del(p + 1, q).mul(&d).is_zero() {
                return Err(ComplexError::Violation {
                    p,
                    q,
                    identity: "∂∂ = 0",
                });
            }
            if q < self.n && !self.delbar(p, q + 1).mul(&db).is_zero() {
                return Err(ComplexError::Violation {
                    p,
                    q,
                    identity: "∂̄∂̄ = 0",
                });
            }
            if p < self.n && q < self.n {
                let anti = self
                    .del(p, q + 1)
                    .mul(&db)
                    .add(&self.delbar(p + 1, q).mul(&d));
                if !anti.is_zero() {
                    return Err(ComplexError::Violation {
                        p,
                        q,
                        identity: "∂∂̄ + ∂̄∂ = 0",
                    });
                }
            }
        }
        Ok(())
    }

    /// The same complex with `∂` and `∂̄` swapped and bidegrees transposed.
    pub fn conjugate_roles(&self) -> DoubleComplex {
        let t = |(p, q): Bidegree| (q, p);
        DoubleComplex {
            n: self.n,
            basis: self.basis.iter().map(|(&k, v)| (t(k), v.clone())).collect(),
            del: self
                .delbar
                .iter()
                .map(|(&k, v)| (t(k), v.clone()))
                .collect(),
            delbar: self.del.iter().map(|(&k, v)| (t(k), v.clone())).collect(),
        }
    }
}

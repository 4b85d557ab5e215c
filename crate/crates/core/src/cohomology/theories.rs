//! The cohomologies of a finite double complex, the Frölicher spectral
//! sequence, and the two numerical predicates built on them.
//!
//! All quantities are computed from exact ranks. Bidegrees are independent
//! of each other and are evaluated in parallel.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::complex::{Bidegree, DoubleComplex};
use super::table::{CohomologyTable, Degree, Theory};
use crate::linalg::{span_dim, to_sparse, Echelon, ExactMatrix, GaussianRational, Insertion};

/// Evaluates `f` at every bidegree of `0..=n × 0..=n`, in parallel.
pub(crate) fn per_bidegree<T, F>(c: &DoubleComplex, f: F) -> BTreeMap<Bidegree, T>
where
    T: Send,
    F: Fn(usize, usize) -> T + Sync,
{
    let cells: Vec<Bidegree> = c.bidegrees().collect();
    cells.par_iter().map(|&(p, q)| ((p, q), f(p, q))).collect()
}

/// `∂∂̄` out of `(p,q)`, into `(p+1,q+1)`.
pub(crate) fn deldelbar(c: &DoubleComplex, p: usize, q: usize) -> ExactMatrix {
    c.del(p, q + 1).mul(&c.delbar(p, q))
}

/// `∂∂̄` into `(p,q)`, from `(p-1,q-1)`; a `dim × 0` matrix on the edges.
pub(crate) fn deldelbar_into(c: &DoubleComplex, p: usize, q: usize) -> ExactMatrix {
    if p == 0 || q == 0 {
        ExactMatrix::zeros(c.dim(p, q), 0)
    } else {
        deldelbar(c, p - 1, q - 1)
    }
}

pub fn dolbeault(c: &DoubleComplex) -> CohomologyTable {
    let ranks = per_bidegree(c, |p, q| c.delbar(p, q).rank());
    let dims = c
        .bidegrees()
        .map(|(p, q)| {
            let incoming = if q == 0 { 0 } else { ranks[&(p, q - 1)] };
            ((p, q), c.dim(p, q) - ranks[&(p, q)] - incoming)
        })
        .collect();
    CohomologyTable::bigraded(Theory::Dolbeault, dims)
}

pub fn del_cohomology(c: &DoubleComplex) -> CohomologyTable {
    let ranks = per_bidegree(c, |p, q| c.del(p, q).rank());
    let dims = c
        .bidegrees()
        .map(|(p, q)| {
            let incoming = if p == 0 { 0 } else { ranks[&(p - 1, q)] };
            ((p, q), c.dim(p, q) - ranks[&(p, q)] - incoming)
        })
        .collect();
    CohomologyTable::bigraded(Theory::Del, dims)
}

/// Basis vectors of `kernel` completing `image` inside it, chosen greedily
/// in the order `kernel` lists them.
fn complement(
    image: &ExactMatrix,
    kernel: Vec<Vec<GaussianRational>>,
) -> Vec<Vec<GaussianRational>> {
    let mut lin = Echelon::new();
    for v in image.transpose().row_vectors() {
        lin.insert(v);
    }
    kernel
        .into_iter()
        .filter(|v| matches!(lin.insert(to_sparse(v)), Insertion::Pivot(_)))
        .collect()
}

/// Dolbeault cohomology with representatives: at each bidegree, the first
/// kernel vectors of `∂̄` (in reduced-echelon order) independent of `im ∂̄`.
pub fn dolbeault_with_representatives(c: &DoubleComplex) -> CohomologyTable {
    let reps = per_bidegree(c, |p, q| {
        complement(&c.delbar_into(p, q), c.delbar(p, q).kernel_basis())
    });
    let mut table = CohomologyTable::bigraded(
        Theory::Dolbeault,
        reps.iter().map(|(&b, v)| (b, v.len())).collect(),
    );
    table.representatives = Some(
        reps.into_iter()
            .map(|((p, q), v)| (Degree::Bi(p, q), v))
            .collect(),
    );
    table
}

/// `(ker ∂ ∩ ker ∂̄) / im ∂∂̄`. The intersection of kernels is the kernel of
/// `∂` stacked on `∂̄`.
pub fn bott_chern(c: &DoubleComplex) -> CohomologyTable {
    let dims = per_bidegree(c, |p, q| {
        let closed = c.dim(p, q) - c.del(p, q).vstack(&c.delbar(p, q)).rank();
        let exact = deldelbar_into(c, p, q);
        debug_assert!(c.del(p, q).mul(&exact).is_zero() && c.delbar(p, q).mul(&exact).is_zero());
        closed - exact.rank()
    });
    CohomologyTable::bigraded(Theory::BottChern, dims)
}

/// `ker ∂∂̄ / (im ∂ + im ∂̄)`. The sum of images is the column space of the
/// two incoming maps side by side.
pub fn aeppli(c: &DoubleComplex) -> CohomologyTable {
    let dims = per_bidegree(c, |p, q| {
        let out = deldelbar(c, p, q);
        let incoming = c.del_into(p, q).hstack(&c.delbar_into(p, q));
        debug_assert!(out.mul(&incoming).is_zero());
        c.dim(p, q) - out.rank() - incoming.rank()
    });
    CohomologyTable::bigraded(Theory::Aeppli, dims)
}

/// Betti numbers of the total complex `(⊕_{p+q=k} A^{p,q}, ∂ + ∂̄)`.
pub fn de_rham(c: &DoubleComplex) -> CohomologyTable {
    let top = 2 * c.n();
    let ranks: Vec<usize> = (0..=top)
        .into_par_iter()
        .map(|k| c.total_differential(k).rank())
        .collect();
    let betti = (0..=top)
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            c.degree_dim(k) - ranks[k] - incoming
        })
        .collect();
    CohomologyTable::total(Theory::DeRham, betti)
}

/// `d` restricted to the blocks `src` and projected onto the blocks `dst`.
/// Rows and columns follow the order of the block lists.
fn d_block(c: &DoubleComplex, src: &[Bidegree], dst: &[Bidegree]) -> ExactMatrix {
    let offsets = |blocks: &[Bidegree]| {
        let mut acc = 0;
        let map: BTreeMap<Bidegree, usize> = blocks
            .iter()
            .map(|&(p, q)| {
                let o = acc;
                acc += c.dim(p, q);
                ((p, q), o)
            })
            .collect();
        (map, acc)
    };
    let (so, cols) = offsets(src);
    let (dof, rows) = offsets(dst);
    let mut m = ExactMatrix::zeros(rows, cols);
    for &(p, q) in src {
        for (target, map) in [
            ((p + 1, q), c.del_ref(p, q)),
            ((p, q + 1), c.delbar_ref(p, q)),
        ] {
            let (Some(map), Some(&row0)) = (map, dof.get(&target)) else {
                continue;
            };
            for (i, j, v) in map.entries() {
                m.set(row0 + i, so[&(p, q)] + j, v.clone());
            }
        }
    }
    m
}

/// Blocks `(p', k-p')` of total degree `k` with `lo ≤ p' ≤ hi`, by increasing `p'`.
fn blocks(c: &DoubleComplex, k: usize, lo: usize, hi: usize) -> Vec<Bidegree> {
    c.degree_blocks(k)
        .into_iter()
        .filter(|&(p, _)| lo <= p && p <= hi)
        .collect()
}

/// `dim E_r^{p,q}` for the filtration `F^p = ⊕_{p' ≥ p} A^{p',•}`:
///
/// `E_r^{p} = π_p(Z_r^p) / π_p(d Z_{r-1}^{p-r+1})`, where
/// `Z_r^p = {x ∈ F^p : dx ∈ F^{p+r}}` and `π_p` keeps the `(p,q)` component.
/// This is the quotient the zig-zag description computes.
fn frolicher_cell(c: &DoubleComplex, r: usize, p: usize, q: usize) -> usize {
    let n = c.n();
    let k = p + q;
    let dim = c.dim(p, q);
    if dim == 0 {
        return 0;
    }
    // π_p(Z_r^p): x ∈ F^p A^k whose d vanishes in the blocks p..p+r-1.
    let src = blocks(c, k, p, n);
    let cut = blocks(c, k + 1, p, p + r - 1);
    let cycles = d_block(c, &src, &cut).kernel_basis();
    let leading = span_dim(&cycles.iter().map(|v| v[..dim].to_vec()).collect::<Vec<_>>());
    if k == 0 {
        return leading;
    }
    // π_p(d Z_{r-1}^{s}), s = max(p - r + 1, 0): y ∈ F^s A^{k-1} whose d
    // vanishes in the blocks s..p-1.
    let s = (p + 1).saturating_sub(r);
    let src = blocks(c, k - 1, s, n);
    let onto = d_block(c, &src, &[(p, q)]);
    if p == s {
        return leading - onto.rank();
    }
    let chains = d_block(c, &src, &blocks(c, k, s, p - 1)).kernel_basis();
    let boundaries: Vec<Vec<GaussianRational>> = chains.iter().map(|y| onto.apply(y)).collect();
    leading - span_dim(&boundaries)
}

/// The page `E_r`, `r ≥ 1`, of the Frölicher spectral sequence.
pub fn frolicher_page(c: &DoubleComplex, r: usize) -> CohomologyTable {
    assert!(r >= 1, "pages start at r = 1");
    if r == 1 {
        let mut t = dolbeault(c);
        t.theory = Theory::Frolicher(1);
        return t;
    }
    let dims = per_bidegree(c, |p, q| frolicher_cell(c, r, p, q));
    CohomologyTable::bigraded(Theory::Frolicher(r), dims)
}

/// Pages `E_1, …, E_{n+1}`; the last one is `E_∞` since `d_r` leaves the
/// bidegree range for `r > n`.
pub fn frolicher_pages(c: &DoubleComplex) -> Vec<CohomologyTable> {
    (1..=c.n() + 1).map(|r| frolicher_page(c, r)).collect()
}

/// `Σ_{p+q=k} h_∂̄^{p,q} = b_k` for every `k`, with `b_k` from `c` itself.
pub fn e1_degeneration(c: &DoubleComplex) -> bool {
    let h = dolbeault(c);
    let b = de_rham(c);
    (0..=2 * c.n()).all(|k| h.degree_sum(k) == b.betti(k))
}

/// `Σ_{p+q=k} (h_BC^{p,q} + h_A^{p,q}) = 2 b_k` for every `k`.
///
/// # Panics
/// If the sum falls below `2 b_k`, which would mean the complex is broken.
pub fn deldelbar_lemma(c: &DoubleComplex) -> bool {
    let bc = bott_chern(c);
    let a = aeppli(c);
    let b = de_rham(c);
    (0..=2 * c.n()).all(|k| {
        let lhs = bc.degree_sum(k) + a.degree_sum(k);
        assert!(
            lhs >= 2 * b.betti(k),
            "Bott-Chern/Aeppli inequality fails in degree {k}"
        );
        lhs == 2 * b.betti(k)
    })
}

/// Dispatches on a theory. Frölicher pages past `E_{n+1}` equal `E_{n+1}`.
pub fn compute(c: &DoubleComplex, theory: Theory) -> CohomologyTable {
    match theory {
        Theory::Dolbeault => dolbeault(c),
        Theory::Del => del_cohomology(c),
        Theory::BottChern => bott_chern(c),
        Theory::Aeppli => aeppli(c),
        Theory::DeRham => de_rham(c),
        Theory::Frolicher(r) => {
            let mut t = frolicher_page(c, r.min(c.n() + 1));
            t.theory = Theory::Frolicher(r);
            t
        }
    }
}

//! Exact linear algebra over the Gaussian rationals.
//!
//! Everything here is exact: zero tests compare reduced fractions, there are
//! no tolerances. Vectors in the subspace helpers are dense coordinate lists
//! of equal length.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{Echelon, Insertion, SparseVec};
pub use matrix::ExactMatrix;
pub use scalar::{GaussianRational, ParseScalarError};

use num_traits::Zero;

pub fn to_sparse(v: &[GaussianRational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    m.kernel_basis()
}

/// Dimension of the span of a list of vectors.
pub fn span_dim<'a>(vectors: impl IntoIterator<Item = &'a Vec<GaussianRational>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(to_sparse(v));
    }
    e.rank()
}

/// `dim(span a + span b)`.
pub fn subspace_dim_sum(a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> usize {
    span_dim(a.iter().chain(b))
}

/// `dim(span a ∩ span b)`.
pub fn subspace_dim_intersection(
    a: &[Vec<GaussianRational>],
    b: &[Vec<GaussianRational>],
) -> usize {
    span_dim(a) + span_dim(b) - subspace_dim_sum(a, b)
}

/// Coefficients `c` with `Σ cᵢ·basisᵢ = target`, or `None` when the target is
/// outside the span. Dependent basis vectors receive coefficient zero.
pub fn solve_in_span(
    basis: &[Vec<GaussianRational>],
    target: &[GaussianRational],
) -> Option<Vec<GaussianRational>> {
    let mut e = Echelon::with_combinations();
    for b in basis {
        assert_eq!(b.len(), target.len(), "basis and target lengths differ");
        e.insert(to_sparse(b));
    }
    e.solve(&to_sparse(target))
        .ok()
        .map(|c| to_dense(&c, basis.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn vecs(rows: &[&[&str]]) -> Vec<Vec<GaussianRational>> {
        rows.iter()
            .map(|r| r.iter().map(|s| g(s)).collect())
            .collect()
    }

    #[test]
    fn sums_and_intersections() {
        let e1 = vecs(&[&["1", "0"]]);
        let e2 = vecs(&[&["0", "1"]]);
        assert_eq!(subspace_dim_sum(&e1, &e1), 1);
        assert_eq!(subspace_dim_sum(&e1, &e2), 2);
        assert_eq!(
            subspace_dim_sum(&vecs(&[&["1", "0"], &["0", "1"]]), &vecs(&[&["1", "1"]])),
            2
        );
        assert_eq!(subspace_dim_intersection(&e1, &e1), 1);
        assert_eq!(subspace_dim_intersection(&e1, &e2), 0);
        assert_eq!(
            subspace_dim_intersection(&vecs(&[&["1", "0"], &["1", "1"]]), &e2),
            1
        );
    }

    #[test]
    fn solve_examples() {
        let basis = vecs(&[&["1", "0"], &["0", "1"]]);
        assert_eq!(
            solve_in_span(&basis, &[g("1"), g("2")]),
            Some(vec![g("1"), g("2")])
        );
        assert_eq!(
            solve_in_span(&vecs(&[&["1", "0"]]), &[g("0"), g("1")]),
            None
        );
    }

    #[test]
    fn frame_change_inverse_has_one_minus_norm_denominator() {
        // Columns of [[1, -t], [-t̄, 1]] at t = 1/2.
        let t = g("1/2");
        let basis = vec![
            vec![GaussianRational::one(), -t.conj()],
            vec![-&t, GaussianRational::one()],
        ];
        let c =
            solve_in_span(&basis, &[GaussianRational::one(), GaussianRational::zero()]).unwrap();
        assert_eq!(c, vec![g("4/3"), g("2/3")]);
        let denom = GaussianRational::one() - GaussianRational::from(t.norm_sqr());
        assert_eq!(denom, g("3/4"));
        assert_eq!(&c[0] * &denom, GaussianRational::one());
    }
}

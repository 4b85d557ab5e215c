//! Hodge theory on a finite double complex whose basis is declared
//! orthonormal: adjoints are conjugate transposes, and the kernels of the
//! Laplacians are the harmonic representatives.

use super::complex::DoubleComplex;
use super::table::{CohomologyTable, Degree, Theory};
use super::theories::per_bidegree;
use crate::linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HodgeTheory {
    Dolbeault,
    BottChern,
}

/// `∂` out of `(p,q)` for possibly negative indices; an empty map off the range.
fn del_at(c: &DoubleComplex, p: isize, q: isize) -> ExactMatrix {
    if p < 0 || q < 0 {
        let rows = if p + 1 >= 0 && q >= 0 {
            c.dim((p + 1) as usize, q as usize)
        } else {
            0
        };
        return ExactMatrix::zeros(rows, 0);
    }
    c.del(p as usize, q as usize)
}

fn delbar_at(c: &DoubleComplex, p: isize, q: isize) -> ExactMatrix {
    if p < 0 || q < 0 {
        let rows = if p >= 0 && q + 1 >= 0 {
            c.dim(p as usize, (q + 1) as usize)
        } else {
            0
        };
        return ExactMatrix::zeros(rows, 0);
    }
    c.delbar(p as usize, q as usize)
}

/// `Δ_∂̄ = ∂̄∂̄* + ∂̄*∂̄` on `A^{p,q}`.
pub fn dolbeault_laplacian(c: &DoubleComplex, p: usize, q: usize) -> ExactMatrix {
    let (p, q) = (p as isize, q as isize);
    let into = delbar_at(c, p, q - 1);
    let out = delbar_at(c, p, q);
    into.mul(&into.adjoint()).add(&out.adjoint().mul(&out))
}

/// `Δ̃_BC = (∂∂̄)(∂∂̄)* + (∂∂̄)*(∂∂̄) + (∂̄*∂)*(∂̄*∂) + (∂*∂̄)*(∂*∂̄) + ∂̄*∂̄ + ∂*∂`
/// on `A^{p,q}`, each term written as `M*M` or `MM*`.
pub fn bott_chern_laplacian(c: &DoubleComplex, p: usize, q: usize) -> ExactMatrix {
    let (p, q) = (p as isize, q as isize);
    let del = |a, b| del_at(c, a, b);
    let delbar = |a, b| delbar_at(c, a, b);
    // ∂∂̄ from (p-1,q-1) into (p,q), and out of (p,q).
    let ddb_in = del(p - 1, q).mul(&delbar(p - 1, q - 1));
    let ddb_out = del(p, q + 1).mul(&delbar(p, q));
    // ∂*∂̄: (p,q) → (p,q+1) → (p-1,q+1).
    let dstar_db = del(p - 1, q + 1).adjoint().mul(&delbar(p, q));
    // ∂̄*∂: (p,q) → (p+1,q) → (p+1,q-1).
    let dbstar_d = delbar(p + 1, q - 1).adjoint().mul(&del(p, q));
    let gram = |m: &ExactMatrix| m.adjoint().mul(m);
    ddb_in
        .mul(&ddb_in.adjoint())
        .add(&gram(&ddb_out))
        .add(&gram(&dstar_db))
        .add(&gram(&dbstar_d))
        .add(&gram(&delbar(p, q)))
        .add(&gram(&del(p, q)))
}

/// Kernel bases of the Laplacian at every bidegree, as representatives.
pub fn hodge_kernels(c: &DoubleComplex, theory: HodgeTheory) -> CohomologyTable {
    let kernels = per_bidegree(c, |p, q| match theory {
        HodgeTheory::Dolbeault => dolbeault_laplacian(c, p, q).kernel_basis(),
        HodgeTheory::BottChern => bott_chern_laplacian(c, p, q).kernel_basis(),
    });
    let name = match theory {
        HodgeTheory::Dolbeault => Theory::Dolbeault,
        HodgeTheory::BottChern => Theory::BottChern,
    };
    let mut table =
        CohomologyTable::bigraded(name, kernels.iter().map(|(&b, k)| (b, k.len())).collect());
    table.representatives = Some(
        kernels
            .into_iter()
            .map(|((p, q), k)| (Degree::Bi(p, q), k))
            .collect(),
    );
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{bott_chern, dolbeault};
    use crate::linalg::{span_dim, GaussianRational};
    use crate::models::build_builtin;
    use num_traits::{One, Zero};

    /// The kernel at `(p,q)` is spanned by the basis monomials `labels`.
    fn assert_spanned_by(
        c: &DoubleComplex,
        k: &CohomologyTable,
        (p, q): (usize, usize),
        labels: &[&str],
    ) {
        let reps = k.representatives_at(p, q);
        assert_eq!(reps.len(), labels.len(), "dimension at ({p},{q})");
        let names = c.labels(p, q);
        let mut all = reps.to_vec();
        for l in labels {
            let i = names
                .iter()
                .position(|n| n == l)
                .unwrap_or_else(|| panic!("no label {l}"));
            let mut e = vec![GaussianRational::zero(); names.len()];
            e[i] = GaussianRational::one();
            all.push(e);
        }
        assert_eq!(span_dim(&all), labels.len(), "span at ({p},{q})");
    }

    #[test]
    fn case1_harmonic_dolbeault_11() {
        let m = build_builtin("nakamura-B-case1", None).unwrap();
        let k = hodge_kernels(m.complex(), HodgeTheory::Dolbeault);
        assert_eq!(k.dims, dolbeault(m.complex()).dims);
        assert_spanned_by(
            m.complex(),
            &k,
            (1, 1),
            &["phi1^phib1", "phi2^phib3", "phi3^phib2"],
        );
    }

    #[test]
    fn case1_harmonic_bott_chern() {
        let m = build_builtin("nakamura-C-case1", None).unwrap();
        let c = m.complex();
        let k = hodge_kernels(c, HodgeTheory::BottChern);
        assert_eq!(k.dims, bott_chern(c).dims);
        for (b, labels) in [
            ((1, 0), &["phi1"][..]),
            ((0, 1), &["phib1"]),
            ((2, 0), &["phi2^phi3"]),
            (
                (2, 1),
                &["phi1^phi2^phib3", "phi1^phi3^phib2", "phi2^phi3^phib1"],
            ),
            (
                (1, 2),
                &["phi3^phib1^phib2", "phi2^phib1^phib3", "phi1^phib2^phib3"],
            ),
            (
                (2, 2),
                &[
                    "phi1^phi2^phib1^phib3",
                    "phi1^phi3^phib1^phib2",
                    "phi2^phi3^phib2^phib3",
                ],
            ),
            ((3, 1), &["phi1^phi2^phi3^phib1"]),
            ((3, 2), &["phi1^phi2^phi3^phib2^phib3"]),
        ] {
            assert_spanned_by(c, &k, b, labels);
        }
    }

    #[test]
    fn case2_harmonic_dolbeault() {
        let m = build_builtin("nakamura-B-case2", None).unwrap();
        let c = m.complex();
        let k = hodge_kernels(c, HodgeTheory::Dolbeault);
        for (b, labels) in [
            ((0, 1), &["phib1", "phib3"][..]),
            ((2, 0), &["phi1^phi2", "phi2^phi3"]),
            ((1, 1), &["phi1^phib2", "phi3^phib2"]),
            ((0, 2), &["phib1^phib3"]),
            (
                (2, 1),
                &[
                    "phi1^phi2^phib1",
                    "phi1^phi2^phib3",
                    "phi2^phi3^phib1",
                    "phi2^phi3^phib3",
                ],
            ),
            ((3, 1), &["phi1^phi2^phi3^phib2"]),
            ((2, 2), &["phi1^phi2^phib1^phib3", "phi2^phi3^phib1^phib3"]),
            (
                (3, 2),
                &["phi1^phi2^phi3^phib1^phib2", "phi1^phi2^phi3^phib2^phib3"],
            ),
        ] {
            assert_spanned_by(c, &k, b, labels);
        }
    }
}

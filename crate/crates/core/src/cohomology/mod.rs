//! Cohomological functionals on a finite double complex.

mod complex;
mod hodge;
mod hypotheses;
mod table;
mod theories;

pub use complex::{Bidegree, ComplexError, DoubleComplex};
pub use hodge::{bott_chern_laplacian, dolbeault_laplacian, hodge_kernels, HodgeTheory};
pub use hypotheses::{check_theorem_hypotheses, Check, HypothesisReport, SMOOTHNESS_NOTE};
pub use table::{CohomologyTable, Degree, Theory};
pub use theories::{
    aeppli, bott_chern, compute, de_rham, del_cohomology, deldelbar_lemma, dolbeault,
    dolbeault_with_representatives, e1_degeneration, frolicher_page, frolicher_pages,
};

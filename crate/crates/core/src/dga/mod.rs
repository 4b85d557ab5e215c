//! Character-weighted exterior algebras and the double complexes of frame spans.
//!
//! Forms are finite sums `c · e^{Σ aⱼzⱼ + bⱼz̄ⱼ} · s₁∧…∧s_k` over coordinate
//! 1-form symbols `sᵢ`. Only the monomials that actually occur are ever
//! materialized.

mod algebra;
mod closure;
mod coframe;
mod error;
mod form;
mod frame;
mod weight;

pub use algebra::{Algebra, CoordinateSymbol, FormType, SymbolDecl, WeightCoordinate};
pub use closure::{check_frame_types, delbar_complex};
pub use coframe::{Character, Coframe, CoframeForm};
pub use error::DgaError;
pub use form::{sort_with_sign, Form, Monomial, SymbolId};
pub use frame::{
    build_double_complex, split_by_bidegree, BidegreeSplit, FrameBasis, FrameElement, FrameSpan,
    MonomialIndex,
};
pub use weight::{GaussInt, Weight};

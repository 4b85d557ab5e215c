//! Built-in model names.

use super::{
    iwasawa, nakamura_span, sawai_yamada_span, torus, Deformation, GeneratorListSpec, ModelError,
    NakamuraSpec, SawaiYamadaSpec, Variant,
};
use crate::linalg::GaussianRational;

/// The sample deformation parameter used when none is given.
pub const DEFAULT_T: (i64, i64) = (1, 2);

pub fn builtin_names() -> &'static [&'static str] {
    &[
        "nakamura-B",
        "nakamura-C",
        "nakamura-B-case1",
        "nakamura-C-case1",
        "nakamura-B-case2",
        "sawai-yamada",
        "torus",
        "iwasawa",
    ]
}

/// Whether the built-in model depends on the parameter `t`.
pub fn takes_parameter(name: &str) -> bool {
    name.contains("case") || name == "sawai-yamada"
}

/// Generator list of a built-in model; `t` defaults to [`DEFAULT_T`] for
/// the deformation families and is ignored by the others.
pub fn builtin(name: &str, t: Option<&GaussianRational>) -> Result<GeneratorListSpec, ModelError> {
    let t = t
        .cloned()
        .unwrap_or_else(|| GaussianRational::ratio(DEFAULT_T.0, DEFAULT_T.1));
    let nakamura =
        |variant, deformation| nakamura_span(&NakamuraSpec::new(variant, deformation, t.clone()));
    match name {
        "nakamura-B" => nakamura(Variant::B, Deformation::None),
        "nakamura-C" => nakamura(Variant::C, Deformation::None),
        "nakamura-B-case1" => nakamura(Variant::B, Deformation::Case1),
        "nakamura-C-case1" => nakamura(Variant::C, Deformation::Case1),
        "nakamura-B-case2" => nakamura(Variant::B, Deformation::Case2),
        "sawai-yamada" => sawai_yamada_span(&SawaiYamadaSpec::heisenberg(t)),
        "torus" => Ok(torus()),
        "iwasawa" => Ok(iwasawa()),
        other => Err(ModelError::UnknownModel(other.to_string())),
    }
}

/// Known Betti numbers of the underlying manifold, where available.
/// Metadata for diffing only; no predicate reads it.
pub fn reference_betti(name: &str) -> Option<&'static [usize]> {
    match name {
        n if n.starts_with("nakamura") => Some(&[1, 2, 5, 8, 5, 2, 1]),
        _ => None,
    }
}

use super::GeneratorListSpec;
use crate::dga::{Algebra, Form, FrameElement, FrameSpan, Weight};
use crate::linalg::GaussianRational;

/// The frame given by the coordinate symbols themselves.
fn symbol_frame(alg: &Algebra) -> Vec<FrameElement> {
    alg.symbols()
        .iter()
        .enumerate()
        .map(|(i, s)| FrameElement::new(&s.name, s.form_type, Form::symbol(i)))
        .collect()
}

/// A one-dimensional complex torus: `Λ(dz, dz̄)` with zero differentials.
pub fn torus() -> GeneratorListSpec {
    let alg = Algebra::from_pairs(&[("dz", "dzb")]).expect("static algebra");
    let frame = symbol_frame(&alg);
    GeneratorListSpec::new("torus", FrameSpan::exterior(alg, frame)).with_metric(&["dz"])
}

/// The Iwasawa manifold: invariant forms `φ₁, φ₂, φ₃` with `dφ₃ = -φ₁∧φ₂`.
pub fn iwasawa() -> GeneratorListSpec {
    let mut alg = Algebra::from_pairs(&[("phi1", "phib1"), ("phi2", "phib2"), ("phi3", "phib3")])
        .expect("static algebra");
    let s = |n: &str| alg.id(n).expect("declared");
    let d3 = Form::term(
        GaussianRational::from(-1),
        Weight::trivial(),
        &[s("phi1"), s("phi2")],
    );
    let phi3 = s("phi3");
    alg.set_differentials(&[(phi3, d3)])
        .expect("consistent differentials");
    let frame = symbol_frame(&alg);
    GeneratorListSpec::new("iwasawa", FrameSpan::exterior(alg, frame))
        .with_metric(&["phi1", "phi2", "phi3"])
}

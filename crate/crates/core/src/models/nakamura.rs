//! Nakamura's completely solvable manifold `ℂ ⋉_φ ℂ²`, `φ(z) = diag(e^z, e^{-z})`.
//!
//! `B` is the exterior algebra on the frame `{dz₁, e^{-z₁}dz₂, e^{z₁}dz₃}`
//! and conjugates with holomorphic characters. `C` adds the exterior algebra
//! on the frame with antiholomorphic characters `e^{∓z̄₁}`; the two overlap
//! (for instance `e^{-z₁}dz₂ ∧ e^{z₁}dz₃ = e^{-z̄₁}dz₂ ∧ e^{z̄₁}dz₃`) and the
//! overlap is removed by the generic basis selection.
//!
//! Deformations: case (1) replaces `dz₁` by `dz₁ - t dz̄₁`, case (2) by
//! `dz₁ - t e^{z₁} dz̄₃`, and the conjugate element accordingly.

use num_traits::{One, Zero};

use super::{build_from_spec, GeneratorListSpec, Model, ModelError};
use crate::dga::{Algebra, Form, FormType, FrameElement, FrameSpan, Weight};
use crate::linalg::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deformation {
    None,
    Case1,
    Case2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakamuraSpec {
    pub variant: Variant,
    pub deformation: Deformation,
    pub t: GaussianRational,
}

impl NakamuraSpec {
    pub fn new(variant: Variant, deformation: Deformation, t: GaussianRational) -> Self {
        Self {
            variant,
            deformation,
            t,
        }
    }

    pub fn undeformed(variant: Variant) -> Self {
        Self::new(variant, Deformation::None, GaussianRational::zero())
    }

    pub fn name(&self) -> String {
        let v = match self.variant {
            Variant::B => "B",
            Variant::C => "C",
        };
        match self.deformation {
            Deformation::None => format!("nakamura-{v}"),
            Deformation::Case1 => format!("nakamura-{v}-case1"),
            Deformation::Case2 => format!("nakamura-{v}-case2"),
        }
    }
}

fn algebra() -> Algebra {
    let mut a = Algebra::from_pairs(&[("dz1", "dzb1"), ("dz2", "dzb2"), ("dz3", "dzb3")])
        .expect("static algebra");
    a.add_weight_coordinate("z1", "dz1", "dzb1")
        .expect("static weight");
    a
}

/// The generator list of the requested span, without the admissibility
/// restrictions of [`build_nakamura`] other than `|t| ≠ 1` in case (1).
/// In particular the `C`-style span of case (2) is returned, although it is
/// not closed under `d`.
pub fn nakamura_span(spec: &NakamuraSpec) -> Result<GeneratorListSpec, ModelError> {
    let t = match spec.deformation {
        Deformation::None => GaussianRational::zero(),
        _ => spec.t.clone(),
    };
    if spec.deformation == Deformation::Case1 && t.norm_sqr().is_one() {
        return Err(ModelError::FrameChangeSingular(format!(
            "case (1) needs |t| ≠ 1, got t = {t}"
        )));
    }
    let alg = algebra();
    let s = |name: &str| alg.id(name).expect("declared symbol");
    let one = GaussianRational::one;
    let term = |c: GaussianRational, w: Weight, sym: &str| Form::term(c, w, &[s(sym)]);
    let hol = |a: i64| Weight::holomorphic(0, a);
    let anti = |b: i64| Weight::antiholomorphic(0, b);
    let triv = Weight::trivial;

    let (phi1, phib1) = match spec.deformation {
        Deformation::None => (term(one(), triv(), "dz1"), term(one(), triv(), "dzb1")),
        Deformation::Case1 => (
            term(one(), triv(), "dz1").sub(&term(t.clone(), triv(), "dzb1")),
            term(one(), triv(), "dzb1").sub(&term(t.conj(), triv(), "dz1")),
        ),
        Deformation::Case2 => (
            term(one(), triv(), "dz1").sub(&term(t.clone(), hol(1), "dzb3")),
            term(one(), triv(), "dzb1").sub(&term(t.conj(), anti(1), "dz3")),
        ),
    };
    let h = FormType::Holomorphic;
    let a = FormType::Antiholomorphic;
    let mut elements = vec![
        FrameElement::new("phi1", h, phi1),
        FrameElement::new("phi2", h, term(one(), hol(-1), "dz2")),
        FrameElement::new("phi3", h, term(one(), hol(1), "dz3")),
        FrameElement::new("phib1", a, phib1),
        FrameElement::new("phib2", a, term(one(), hol(-1), "dzb2")),
        FrameElement::new("phib3", a, term(one(), hol(1), "dzb3")),
    ];
    let mut sets = vec![vec![0, 1, 2, 3, 4, 5]];
    if spec.variant == Variant::C {
        elements.extend([
            FrameElement::new("chi2", h, term(one(), anti(-1), "dz2")),
            FrameElement::new("chi3", h, term(one(), anti(1), "dz3")),
            FrameElement::new("chib2", a, term(one(), anti(-1), "dzb2")),
            FrameElement::new("chib3", a, term(one(), anti(1), "dzb3")),
        ]);
        sets.push(vec![0, 6, 7, 3, 8, 9]);
    }
    let mut out = GeneratorListSpec::new(&spec.name(), FrameSpan::new(alg, elements, sets))
        .with_metric(&["phi1", "phi2", "phi3"]);
    if spec.deformation != Deformation::None {
        out = out
            .with_param("t", t)
            .with_reference(nakamura_span(&NakamuraSpec::undeformed(spec.variant))?);
    }
    Ok(out)
}

/// Builds `B_Γ`, `C_Γ` or one of their deformations.
pub fn build_nakamura(spec: &NakamuraSpec) -> Result<Model, ModelError> {
    if spec.variant == Variant::C && spec.deformation == Deformation::Case2 {
        return Err(ModelError::NoFiniteSubcomplex(
            "the C-style span is not a sub-double-complex under the case (2) deformation"
                .to_string(),
        ));
    }
    build_from_spec(nakamura_span(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::split_by_bidegree;
    use crate::models::Closure;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn dims(m: &Model) -> Vec<Vec<usize>> {
        let c = m.complex();
        (0..=6)
            .map(|k| {
                c.degree_blocks(k)
                    .iter()
                    .rev()
                    .map(|&(p, q)| c.dim(p, q))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn b_has_the_dimensions_of_its_basis_table() {
        let m = build_nakamura(&NakamuraSpec::undeformed(Variant::B)).unwrap();
        let expected: Vec<Vec<usize>> = vec![
            vec![1],
            vec![3, 3],
            vec![3, 9, 3],
            vec![1, 9, 9, 1],
            vec![3, 9, 3],
            vec![3, 3],
            vec![1],
        ];
        assert_eq!(dims(&m), expected);
        assert_eq!(m.complex().total_dim(), 64);
        assert_eq!(m.complex().labels(1, 1)[0], "phi1^phib1");
    }

    #[test]
    fn c_dedups_the_overlap() {
        let m = build_nakamura(&NakamuraSpec::undeformed(Variant::C)).unwrap();
        assert_eq!(m.complex().dim(1, 1), 15);
        assert_eq!(m.complex().dim(2, 1), 15);
        assert_eq!(m.complex().dim(2, 0), 5);
        assert_eq!(m.complex().total_dim(), 104);
    }

    #[test]
    fn case1_splits_d_phi2() {
        let spec =
            nakamura_span(&NakamuraSpec::new(Variant::B, Deformation::Case1, g("1/2"))).unwrap();
        let span = &spec.span;
        let frame = span.elements.clone();
        let d1 =
            split_by_bidegree(&span.algebra, &span.algebra.d(&frame[0].value), &frame).unwrap();
        assert!(d1.parts.is_empty());
        let d2 =
            split_by_bidegree(&span.algebra, &span.algebra.d(&frame[1].value), &frame).unwrap();
        assert_eq!(d2.del_part((1, 0)), [("phi1^phi2".to_string(), g("-4/3"))]);
        // φ₂∧φ̄₁ = -φ̄₁∧φ₂ in index order.
        assert_eq!(
            d2.delbar_part((1, 0)),
            [("phi2^phib1".to_string(), g("2/3"))]
        );
    }

    #[test]
    fn case2_d_phi1() {
        let spec =
            nakamura_span(&NakamuraSpec::new(Variant::B, Deformation::Case2, g("1/2"))).unwrap();
        let span = &spec.span;
        let frame = span.elements.clone();
        let d1 =
            split_by_bidegree(&span.algebra, &span.algebra.d(&frame[0].value), &frame).unwrap();
        assert_eq!(
            d1.delbar_part((1, 0)),
            [("phi1^phib3".to_string(), g("-1/2"))]
        );
        assert!(d1.del_part((1, 0)).is_empty());
    }

    #[test]
    fn admissibility() {
        let singular = NakamuraSpec::new(Variant::B, Deformation::Case1, g("i"));
        assert!(matches!(
            build_nakamura(&singular),
            Err(ModelError::FrameChangeSingular(_))
        ));
        let c2 = NakamuraSpec::new(Variant::C, Deformation::Case2, g("1/2"));
        assert!(matches!(
            build_nakamura(&c2),
            Err(ModelError::NoFiniteSubcomplex(_))
        ));
        assert!(build_nakamura(&NakamuraSpec::new(Variant::B, Deformation::Case2, g("7"))).is_ok());
    }

    #[test]
    fn case2_is_closed_under_delbar_only() {
        let m =
            build_nakamura(&NakamuraSpec::new(Variant::B, Deformation::Case2, g("1/2"))).unwrap();
        assert_eq!(m.closure, Closure::DelbarOnly);
        assert!(m.complex().del(1, 0).is_zero());
        assert_eq!(m.de_rham_complex().unwrap().total_dim(), 64);
        let m =
            build_nakamura(&NakamuraSpec::new(Variant::B, Deformation::Case1, g("1/2"))).unwrap();
        assert_eq!(m.closure, Closure::Double);
        let m = build_nakamura(&NakamuraSpec::new(Variant::B, Deformation::Case2, g("0"))).unwrap();
        assert_eq!(m.closure, Closure::Double);
    }
}

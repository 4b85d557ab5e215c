//! Builders for the concrete complexes: Nakamura's manifold and its two
//! deformation families, Sawai–Yamada families, tori, nilmanifolds, and
//! generic generator lists.

mod basic;
mod nakamura;
mod registry;
mod sawai_yamada;
mod scan;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cohomology::{self, CohomologyTable, DoubleComplex, Theory};
use crate::dga::{
    build_double_complex, check_frame_types, delbar_complex, Coframe, DgaError, Form, FormType,
    FrameBasis, FrameSpan,
};
use crate::linalg::GaussianRational;

pub use basic::{iwasawa, torus};
pub use nakamura::{build_nakamura, nakamura_span, Deformation, NakamuraSpec, Variant};
pub use registry::{builtin, builtin_names, reference_betti, takes_parameter, DEFAULT_T};
pub use sawai_yamada::{build_sawai_yamada, sawai_yamada_span, SawaiYamadaSpec};
pub use scan::{deformation_scan, family_names, Property, ScanReport, ScanRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("frame change singular: {0}")]
    FrameChangeSingular(String),
    #[error("no finite sub-double-complex: {0}")]
    NoFiniteSubcomplex(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{what} is unavailable: {reason}")]
    Unavailable { what: String, reason: String },
}

/// A model given by explicit generator data: the ambient algebra, the frame
/// elements, the frame sets whose exterior algebras are summed, and the
/// names of the (1,0) frame elements that form the unitary metric frame.
///
/// `reference` is the undeformed member of the family, if any. It supplies
/// the total complex for Betti numbers when the span itself is closed under
/// `∂̄` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorListSpec {
    pub name: String,
    pub params: BTreeMap<String, GaussianRational>,
    pub span: FrameSpan,
    pub metric: Option<Vec<String>>,
    pub reference: Option<Box<GeneratorListSpec>>,
}

impl GeneratorListSpec {
    pub fn new(name: &str, span: FrameSpan) -> Self {
        Self {
            name: name.to_string(),
            params: BTreeMap::new(),
            span,
            metric: None,
            reference: None,
        }
    }

    pub fn with_metric(mut self, names: &[&str]) -> Self {
        self.metric = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn with_param(mut self, name: &str, value: GaussianRational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_reference(mut self, reference: GeneratorListSpec) -> Self {
        self.reference = Some(Box::new(reference));
        self
    }

    /// Indices of the metric frame elements, checked to be (1,0) frame elements.
    pub fn metric_indices(&self) -> Result<Option<Vec<usize>>, ModelError> {
        let Some(names) = &self.metric else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let i = self.span.element(name).ok_or_else(|| {
                ModelError::InvalidParameters(format!(
                    "metric names unknown frame element `{name}`"
                ))
            })?;
            if self.span.elements[i].form_type != FormType::Holomorphic {
                return Err(ModelError::InvalidParameters(format!(
                    "metric element `{name}` is not of type (1,0)"
                )));
            }
            out.push(i);
        }
        Ok(Some(out))
    }

    /// The coframe of the metric frame; `None` without a metric.
    pub fn coframe(&self) -> Result<Option<Coframe>, ModelError> {
        let Some(indices) = self.metric_indices()? else {
            return Ok(None);
        };
        let holo: Vec<Form> = indices
            .iter()
            .map(|&i| self.span.elements[i].value.clone())
            .collect();
        Ok(Some(Coframe::new(&self.span.algebra, &holo)?))
    }
}

/// What the span of a model is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Closed under `d`: a genuine double complex.
    Double,
    /// Closed under `∂̄` only; the complex records `∂ = 0`.
    DelbarOnly,
}

/// A built model: its generator data, the basis, and the complex.
#[derive(Clone, Debug)]
pub struct Model {
    pub spec: GeneratorListSpec,
    pub basis: FrameBasis,
    pub complex: DoubleComplex,
    pub closure: Closure,
    /// For `DelbarOnly` models: the double complex of the reference spec.
    pub reference: Option<DoubleComplex>,
}

impl Model {
    pub fn complex(&self) -> &DoubleComplex {
        &self.complex
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// The complex whose total cohomology gives the Betti numbers: the model
    /// itself, or its reference when it is closed under `∂̄` only.
    pub fn de_rham_complex(&self) -> Option<&DoubleComplex> {
        match self.closure {
            Closure::Double => Some(&self.complex),
            Closure::DelbarOnly => self.reference.as_ref(),
        }
    }

    fn unavailable(&self, what: impl ToString) -> ModelError {
        let reason = if self.closure == Closure::DelbarOnly && self.reference.is_none() {
            "the span is closed under delbar only and has no reference model"
        } else {
            "the span is closed under delbar only"
        };
        ModelError::Unavailable {
            what: what.to_string(),
            reason: reason.to_string(),
        }
    }

    /// A cohomology table. On `∂̄`-only models only Dolbeault (`E₁`) and,
    /// through the reference, de Rham are available.
    pub fn table(&self, theory: Theory) -> Result<CohomologyTable, ModelError> {
        match (self.closure, theory) {
            (Closure::Double, t) => Ok(cohomology::compute(&self.complex, t)),
            (_, Theory::Dolbeault | Theory::Frolicher(1)) => {
                Ok(cohomology::compute(&self.complex, theory))
            }
            (_, Theory::DeRham) => self
                .de_rham_complex()
                .map(cohomology::de_rham)
                .ok_or_else(|| self.unavailable(theory)),
            (_, t) => Err(self.unavailable(t)),
        }
    }

    /// `Σ_{p+q=k} h_∂̄^{p,q} = b_k` for all `k`, with `b_k` from
    /// [`Model::de_rham_complex`].
    pub fn e1_degeneration(&self) -> Result<bool, ModelError> {
        let reference = self
            .de_rham_complex()
            .ok_or_else(|| self.unavailable("e1-degeneration"))?;
        let h = cohomology::dolbeault(&self.complex);
        let b = cohomology::de_rham(reference);
        Ok((0..=2 * self.complex.n()).all(|k| h.degree_sum(k) == b.betti(k)))
    }

    pub fn deldelbar_lemma(&self) -> Result<bool, ModelError> {
        match self.closure {
            Closure::Double => Ok(cohomology::deldelbar_lemma(&self.complex)),
            Closure::DelbarOnly => Err(self.unavailable("ddbar-lemma")),
        }
    }
}

/// Builds the double complex of a generator list. A span that is not
/// closed under `d` but has a metric frame is retried as a `∂̄`-only
/// complex, split with the exact bigrading of the metric coframe.
pub fn build_from_spec(spec: GeneratorListSpec) -> Result<Model, ModelError> {
    spec.span.algebra.validate_structural_differentials()?;
    let coframe = spec.coframe()?;
    if let Some(cf) = &coframe {
        check_frame_types(&spec.span, cf)?;
    }
    let basis = FrameBasis::new(spec.span.clone())?;
    match build_double_complex(&basis) {
        Ok(complex) => Ok(Model {
            spec,
            basis,
            complex,
            closure: Closure::Double,
            reference: None,
        }),
        Err(err @ DgaError::SpanNotClosed { .. }) => {
            let Some(cf) = coframe else {
                return Err(err.into());
            };
            let complex = delbar_complex(&basis, &cf)?;
            let reference = match &spec.reference {
                Some(r) => {
                    let built = build_from_spec((**r).clone())?;
                    if built.closure != Closure::Double {
                        return Err(ModelError::InvalidParameters(format!(
                            "reference model `{}` is not a double complex",
                            built.name()
                        )));
                    }
                    Some(built.complex)
                }
                None => None,
            };
            Ok(Model {
                spec,
                basis,
                complex,
                closure: Closure::DelbarOnly,
                reference,
            })
        }
        Err(other) => Err(other.into()),
    }
}

/// Builds a built-in model; see [`builtin`].
pub fn build_builtin(name: &str, t: Option<&GaussianRational>) -> Result<Model, ModelError> {
    build_from_spec(builtin(name, t)?)
}

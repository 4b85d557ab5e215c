use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}`: {reason}")]
    BadConjugatePair { name: String, reason: String },
    #[error("weight coordinate `{name}`: {reason}")]
    BadWeightCoordinate { name: String, reason: String },
    #[error("structural differential of `{0}` is not a 2-form")]
    DifferentialNotTwoForm(String),
    #[error("structural differential of `{0}` is not the conjugate of its partner's")]
    ConjugateDifferentialMismatch(String),
    #[error("structural differentials violate d² = 0: {0}")]
    StructuralViolation(String),
    #[error("frame element `{0}` has the wrong degree or is zero")]
    BadFrameElement(String),
    #[error("frame elements dependent: {0}")]
    FramesDependent(String),
    #[error(
        "bigradings inconsistent in degree {degree}: {label} is a combination of other bidegrees"
    )]
    BigradingInconsistent { degree: usize, label: String },
    #[error("span not d-closed: d({label}) leaves the span; unreachable component {residual}")]
    SpanNotClosed { label: String, residual: String },
    #[error("d({label}) has a component of bidegree ({p},{q})")]
    WrongBidegree { label: String, p: usize, q: usize },
    #[error("`{label}` is not of pure bidegree for the metric coframe")]
    MixedBidegree { label: String },
    #[error("not in frame span: unreachable component {residual}")]
    NotInFrameSpan { residual: String },
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

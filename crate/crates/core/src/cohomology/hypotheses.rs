//! Checks of the finite-dimensional hypotheses under which a frame span
//! computes the Dolbeault (closure under `∂̄` and `∗̄`) or Bott-Chern
//! (closure under `∂`, `∂̄` and `∗̄`) cohomology of a deformation.
//!
//! Bidegrees are those of the metric coframe, computed exactly; `∗̄` is
//! taken up to a constant per bidegree, which does not affect closure.

use std::fmt;

use crate::dga::{check_frame_types, Coframe, DgaError, Form, FrameBasis, FrameSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    /// The first counterexample when the check fails.
    pub detail: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Self {
            passed: true,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        Self {
            passed: false,
            detail: Some(detail),
        }
    }

    fn record(&mut self, detail: impl FnOnce() -> String) {
        if self.passed {
            *self = Check::fail(detail());
        }
    }
}

pub const SMOOTHNESS_NOTE: &str =
    "smooth dependence on t of the span and the metric: not machine-checkable";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub delbar_closed: Check,
    pub del_closed: Check,
    pub star_closed: Check,
}

impl HypothesisReport {
    fn failed(detail: String) -> Self {
        Self {
            delbar_closed: Check::fail(detail.clone()),
            del_closed: Check::fail(detail.clone()),
            star_closed: Check::fail(detail),
        }
    }

    /// Hypotheses for Dolbeault cohomology: `∂̄`- and `∗̄`-closure.
    pub fn dolbeault_setting(&self) -> bool {
        self.delbar_closed.passed && self.star_closed.passed
    }

    /// Hypotheses for Bott-Chern cohomology: `∂`-, `∂̄`- and `∗̄`-closure.
    pub fn bott_chern_setting(&self) -> bool {
        self.dolbeault_setting() && self.del_closed.passed
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, check) in [
            ("closed under delbar", &self.delbar_closed),
            ("closed under del", &self.del_closed),
            ("closed under star-bar", &self.star_closed),
        ] {
            let verdict = if check.passed { "pass" } else { "fail" };
            write!(f, "{name}: {verdict}")?;
            if let Some(d) = &check.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{SMOOTHNESS_NOTE}")
    }
}

/// Checks the span against the metric frame given by the (1,0) elements
/// `metric` (indices into `span.elements`).
pub fn check_theorem_hypotheses(span: &FrameSpan, metric: &[usize]) -> HypothesisReport {
    let holo: Vec<Form> = metric
        .iter()
        .map(|&i| span.elements[i].value.clone())
        .collect();
    let coframe = match Coframe::new(&span.algebra, &holo) {
        Ok(c) => c,
        Err(e) => return HypothesisReport::failed(e.to_string()),
    };
    if let Err(e) = check_frame_types(span, &coframe) {
        return HypothesisReport::failed(e.to_string());
    }
    let basis = match FrameBasis::new(span.clone()) {
        Ok(b) => b,
        Err(e) => return HypothesisReport::failed(e.to_string()),
    };
    let mut report = HypothesisReport {
        delbar_closed: Check::pass(),
        del_closed: Check::pass(),
        star_closed: Check::pass(),
    };
    let residual = |e: DgaError| match e {
        DgaError::NotInFrameSpan { residual } => residual,
        other => other.to_string(),
    };
    for (p, q) in basis.bidegrees().collect::<Vec<_>>() {
        for (x, label) in basis.raw((p, q)).iter().zip(basis.labels((p, q))) {
            for (target, part) in coframe.d_parts(x) {
                let check = if target == (p + 1, q) {
                    &mut report.del_closed
                } else if target == (p, q + 1) {
                    &mut report.delbar_closed
                } else {
                    let why = || format!("d({label}) has a ({},{}) component", target.0, target.1);
                    report.del_closed.record(why);
                    report.delbar_closed.record(why);
                    continue;
                };
                if check.passed {
                    if let Err(e) = basis.coordinates(&part) {
                        let name = if target.0 > p { "del" } else { "delbar" };
                        check
                            .record(|| format!("{name}({label}) leaves the span: {}", residual(e)));
                    }
                }
            }
            if report.star_closed.passed {
                if let Err(e) = basis.coordinates(&coframe.star_bar(x)) {
                    report
                        .star_closed
                        .record(|| format!("star-bar({label}) leaves the span: {}", residual(e)));
                }
            }
        }
    }
    report
}

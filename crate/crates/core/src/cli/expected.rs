//! Expected-dimension files and diffing against computed tables.
//!
//! ```text
//! # applies to the model named on the command line
//! expect dolbeault (1,0) = 3
//! model nakamura-C-case1 t = 1/2
//! expect bott-chern (1,1) = 3
//! ```
//!
//! `model NAME [t = GAUSS]` opens a section for a built-in model; lines
//! before the first section belong to the model given on the command line.

use std::collections::BTreeMap;
use std::fmt;

use super::document::{parse_expectation, strip_comment, Cursor, Expectation, ParseError};
use crate::cohomology::{CohomologyTable, Degree, Theory};
use crate::linalg::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedSection {
    /// `None` for the leading section, which has no `model` line.
    pub model: Option<String>,
    pub t: Option<GaussianRational>,
    pub expectations: Vec<Expectation>,
}

pub fn parse_expected(text: &str) -> Result<Vec<ExpectedSection>, ParseError> {
    let mut sections = vec![ExpectedSection {
        model: None,
        t: None,
        expectations: Vec::new(),
    }];
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, i + 1);
        let at = cur.pos();
        match cur.ident()?.as_str() {
            "expect" => {
                let e = parse_expectation(&mut cur)?;
                sections.last_mut().expect("nonempty").expectations.push(e);
            }
            "model" => {
                let name = cur.word()?;
                let t = if cur.at_end() {
                    None
                } else {
                    cur.keyword("t")?;
                    cur.expect('=')?;
                    Some(cur.gauss(&[])?)
                };
                sections.push(ExpectedSection {
                    model: Some(name),
                    t,
                    expectations: Vec::new(),
                });
            }
            other => return Err(cur.error_at(at, format!("unknown statement `{other}`"))),
        }
    }
    if sections[0].expectations.is_empty() && sections.len() > 1 {
        sections.remove(0);
    }
    Ok(sections)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub theory: Theory,
    pub degree: Degree,
    pub expected: usize,
    pub computed: usize,
}

pub fn cell_name(theory: Theory, degree: Degree) -> String {
    match degree {
        Degree::Bi(p, q) => format!("h[{theory}][{p}][{q}]"),
        Degree::Total(k) => format!("b[{k}]"),
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mismatch {}: expected {}, computed {}",
            cell_name(self.theory, self.degree),
            self.expected,
            self.computed
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOutcome {
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DiffOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: DiffOutcome) {
        self.compared += other.compared;
        self.mismatches.extend(other.mismatches);
    }
}

/// Compares the declared cells only; cells outside a table count as 0.
pub fn diff(
    expectations: &[Expectation],
    tables: &BTreeMap<Theory, CohomologyTable>,
) -> DiffOutcome {
    let mismatches = expectations
        .iter()
        .filter_map(|e| {
            let computed = tables
                .get(&e.theory)
                .and_then(|t| t.dims.get(&e.degree).copied())
                .unwrap_or(0);
            (computed != e.dim).then_some(Mismatch {
                theory: e.theory,
                degree: e.degree,
                expected: e.dim,
                computed,
            })
        })
        .collect();
    DiffOutcome {
        compared: expectations.len(),
        mismatches,
    }
}

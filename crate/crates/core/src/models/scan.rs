//! Deformation scans: evaluate the cohomological properties of a family at
//! several parameter values and flag what changes at `t = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use super::{build_builtin, builtin_names, takes_parameter, ModelError};
use crate::cohomology::{dolbeault, CohomologyTable, Degree};
use crate::linalg::GaussianRational;

/// The properties a scan can report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Dolbeault,
    E1Degeneration,
    DeldelbarLemma,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::Dolbeault,
        Property::E1Degeneration,
        Property::DeldelbarLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Dolbeault => "dolbeault",
            Property::E1Degeneration => "e1-degeneration",
            Property::DeldelbarLemma => "ddbar-lemma",
        }
    }
}

/// Family names accepted by [`deformation_scan`]: the two Nakamura
/// families, and every built-in without a parameter as a constant family.
pub fn family_names() -> Vec<&'static str> {
    let mut out = vec!["nakamura-case1", "nakamura-case2"];
    out.extend(builtin_names().iter().filter(|n| !takes_parameter(n)));
    out
}

/// The models of a family at `t`: the one for Dolbeault cohomology and
/// E₁-degeneration, and the one for the ∂∂̄-lemma if the family has it.
fn family_models(family: &str) -> Result<(&'static str, Option<&'static str>), ModelError> {
    match family {
        "nakamura-case1" => Ok(("nakamura-B-case1", Some("nakamura-C-case1"))),
        "nakamura-case2" => Ok(("nakamura-B-case2", None)),
        other => builtin_names()
            .iter()
            .find(|n| **n == other && !takes_parameter(n))
            .map(|n| (*n, Some(*n)))
            .ok_or_else(|| ModelError::UnknownModel(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub t: GaussianRational,
    pub dolbeault: Option<CohomologyTable>,
    pub e1_degeneration: Option<bool>,
    pub deldelbar_lemma: Option<bool>,
    /// Build or admissibility errors at this `t`.
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub family: String,
    pub properties: Vec<Property>,
    pub rows: Vec<ScanRow>,
    pub summary: Vec<String>,
}

fn scan_row(
    family: (&str, Option<&str>),
    t: &GaussianRational,
    properties: &[Property],
) -> ScanRow {
    let mut row = ScanRow {
        t: t.clone(),
        dolbeault: None,
        e1_degeneration: None,
        deldelbar_lemma: None,
        errors: Vec::new(),
    };
    let wants = |p| properties.contains(&p);
    if wants(Property::Dolbeault) || wants(Property::E1Degeneration) {
        match build_builtin(family.0, Some(t)) {
            Ok(m) => {
                if wants(Property::Dolbeault) {
                    row.dolbeault = Some(dolbeault(m.complex()));
                }
                if wants(Property::E1Degeneration) {
                    row.e1_degeneration = m.e1_degeneration().ok();
                }
            }
            Err(e) => row.errors.push(format!("{}: {e}", family.0)),
        }
    }
    if let (true, Some(name)) = (wants(Property::DeldelbarLemma), family.1) {
        match build_builtin(name, Some(t)) {
            Ok(m) => row.deldelbar_lemma = m.deldelbar_lemma().ok(),
            Err(e) => row.errors.push(format!("{name}: {e}")),
        }
    }
    row
}

fn verdict_changes(name: &str, base: Option<bool>, others: &[Option<bool>]) -> Option<String> {
    let base = base?;
    let others: Vec<bool> = others.iter().map(|v| v.unwrap_or(base)).collect();
    if others.is_empty() || others.iter().all(|&v| v == base) {
        return None;
    }
    if !base && others.iter().all(|&v| v) {
        Some(format!(
            "{name}: holds for every t ≠ 0 but fails at t = 0 (not closed under deformations)"
        ))
    } else {
        Some(format!("{name}: changes between t = 0 and t ≠ 0"))
    }
}

fn table_changes(
    base: &CohomologyTable,
    other: &CohomologyTable,
    t: &GaussianRational,
) -> Option<String> {
    let cells: Vec<String> = base
        .dims
        .iter()
        .filter_map(|(deg, &d)| {
            let e = other.dims.get(deg).copied().unwrap_or(0);
            match deg {
                Degree::Bi(p, q) if d != e => Some(format!("h^{{{p},{q}}} {d} → {e}")),
                _ => None,
            }
        })
        .collect();
    if cells.is_empty() {
        None
    } else {
        Some(format!("dolbeault at t = {t}: {}", cells.join(", ")))
    }
}

/// Scans `family` over `t_values`. Rows are in input order; the summary
/// compares the row at `t = 0` (or the first row) with the others.
pub fn deformation_scan(
    family: &str,
    t_values: &[GaussianRational],
    properties: &[Property],
) -> Result<ScanReport, ModelError> {
    let models = family_models(family)?;
    let rows: Vec<ScanRow> = t_values
        .par_iter()
        .map(|t| scan_row(models, t, properties))
        .collect();
    let mut summary = Vec::new();
    let base = rows.iter().position(|r| r.t.is_zero()).unwrap_or(0);
    if let Some(b) = rows.get(base) {
        let others: Vec<&ScanRow> = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != base)
            .map(|(_, r)| r)
            .collect();
        if let Some(bt) = &b.dolbeault {
            summary.extend(others.iter().filter_map(|r| {
                r.dolbeault
                    .as_ref()
                    .and_then(|ot| table_changes(bt, ot, &r.t))
            }));
        }
        let verdicts: BTreeMap<Property, (Option<bool>, Vec<Option<bool>>)> = [
            (
                Property::E1Degeneration,
                (
                    b.e1_degeneration,
                    others.iter().map(|r| r.e1_degeneration).collect(),
                ),
            ),
            (
                Property::DeldelbarLemma,
                (
                    b.deldelbar_lemma,
                    others.iter().map(|r| r.deldelbar_lemma).collect(),
                ),
            ),
        ]
        .into_iter()
        .collect();
        for (p, (base_v, other_v)) in verdicts {
            summary.extend(verdict_changes(p.name(), base_v, &other_v));
        }
    }
    if summary.is_empty() {
        summary.push("no property changes".to_string());
    }
    Ok(ScanReport {
        family: family.to_string(),
        properties: properties.to_vec(),
        rows,
        summary,
    })
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scan {}", self.family)?;
        let show = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
        for row in &self.rows {
            write!(f, "t = {}:", row.t)?;
            for p in &self.properties {
                match p {
                    Property::Dolbeault => {
                        if let Some(h) = &row.dolbeault {
                            let n = h.dims.keys().filter_map(|d| match d {
                                Degree::Bi(p, _) => Some(*p),
                                Degree::Total(_) => None,
                            });
                            let n = n.max().unwrap_or(0);
                            let rows: Vec<String> = h
                                .rows(n)
                                .iter()
                                .map(|r| {
                                    r.iter()
                                        .map(ToString::to_string)
                                        .collect::<Vec<_>>()
                                        .join(",")
                                })
                                .collect();
                            write!(f, " dolbeault={}", rows.join(";"))?;
                        }
                    }
                    Property::E1Degeneration => {
                        write!(f, " e1-degeneration={}", show(row.e1_degeneration))?
                    }
                    Property::DeldelbarLemma => {
                        write!(f, " ddbar-lemma={}", show(row.deldelbar_lemma))?
                    }
                }
            }
            for e in &row.errors {
                write!(f, " error: {e}")?;
            }
            writeln!(f)?;
        }
        for line in &self.summary {
            writeln!(f, "summary: {line}")?;
        }
        Ok(())
    }
}

//! Sawai–Yamada families: `G = ℂ ⋉ (N × N)` for a complex nilpotent Lie
//! algebra `𝔫` with basis `Y₁…Y_m`, where `X` acts by `k_j` on the first copy
//! and by `-k_j` on the second, deformed along
//! `t ∂/∂z ⊗ e^{k₁z} ȳ_{2,1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{build_from_spec, GeneratorListSpec, Model, ModelError};
use crate::dga::{Algebra, Form, FormType, FrameElement, FrameSpan, SymbolDecl, SymbolId, Weight};
use crate::linalg::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SawaiYamadaSpec {
    pub m: usize,
    /// `C^k_{ij}` keyed `(i, j, k)` with `1 ≤ i < j ≤ m`.
    pub structure_constants: BTreeMap<(usize, usize, usize), i64>,
    pub weights: Vec<i64>,
    pub t: GaussianRational,
}

impl SawaiYamadaSpec {
    /// The three-dimensional Heisenberg algebra `[Y₁, Y₂] = Y₃` with `k = (1, 1, 2)`.
    pub fn heisenberg(t: GaussianRational) -> Self {
        Self {
            m: 3,
            structure_constants: [((1, 2, 3), 1)].into_iter().collect(),
            weights: vec![1, 1, 2],
            t,
        }
    }

    /// The abelian one-dimensional case `m = 1`, `k = (1)`.
    pub fn abelian(m: usize, weights: Vec<i64>, t: GaussianRational) -> Self {
        Self {
            m,
            structure_constants: BTreeMap::new(),
            weights,
            t,
        }
    }

    fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::InvalidParameters(msg));
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        if self.weights.len() != self.m {
            return bad(format!(
                "expected {} weights, got {}",
                self.m,
                self.weights.len()
            ));
        }
        if self.weights.iter().any(|&k| k <= 0) {
            return bad("weights must be positive integers".into());
        }
        for (&(i, j, k), &c) in &self.structure_constants {
            if !(1 <= i && i < j && j <= self.m && 1 <= k && k <= self.m) {
                return bad(format!(
                    "structure constant index ({i},{j},{k}) out of range"
                ));
            }
            if c != 0 && self.weights[i - 1] + self.weights[j - 1] != self.weights[k - 1] {
                return bad(format!(
                    "weights incompatible: C^{k}_{{{i}{j}}} ≠ 0 but k{i} + k{j} = {} ≠ k{k} = {}",
                    self.weights[i - 1] + self.weights[j - 1],
                    self.weights[k - 1]
                ));
            }
        }
        Ok(())
    }
}

fn y(copy: usize, j: usize) -> String {
    format!("y{copy}_{j}")
}

fn yb(copy: usize, j: usize) -> String {
    format!("yb{copy}_{j}")
}

/// Generator list of the full exterior algebra on the deformed frame.
pub fn sawai_yamada_span(spec: &SawaiYamadaSpec) -> Result<GeneratorListSpec, ModelError> {
    spec.validate()?;
    let m = spec.m;
    let mut decls = SymbolDecl::pair("dz", "dzb").to_vec();
    for copy in [1, 2] {
        for j in 1..=m {
            decls.extend(SymbolDecl::pair(&y(copy, j), &yb(copy, j)));
        }
    }
    let mut alg = Algebra::new(&decls)?;
    alg.add_weight_coordinate("z", "dz", "dzb")?;
    let s = |alg: &Algebra, n: &str| -> SymbolId { alg.id(n).expect("declared") };

    // d y_{a,k} = -Σ_{i<j} C^k_{ij} y_{a,i}∧y_{a,j} on both copies.
    let mut diffs: BTreeMap<SymbolId, Form> = BTreeMap::new();
    for (&(i, j, k), &c) in &spec.structure_constants {
        for copy in [1, 2] {
            let entry = diffs.entry(s(&alg, &y(copy, k))).or_default();
            let term = Form::term(
                GaussianRational::from(-c),
                Weight::trivial(),
                &[s(&alg, &y(copy, i)), s(&alg, &y(copy, j))],
            );
            entry.add_assign(&term);
        }
    }
    let diffs: Vec<(SymbolId, Form)> = diffs.into_iter().collect();
    alg.set_differentials(&diffs)?;
    let mut symbol_weights = BTreeMap::new();
    for (j, &k) in spec.weights.iter().enumerate() {
        for name in [y(1, j + 1), yb(1, j + 1)] {
            symbol_weights.insert(s(&alg, &name), Weight::holomorphic(0, -k));
        }
        for name in [y(2, j + 1), yb(2, j + 1)] {
            symbol_weights.insert(s(&alg, &name), Weight::holomorphic(0, k));
        }
    }
    alg.validate_structural_differentials()?;
    alg.validate_weight_compatibility(&symbol_weights)?;

    let one = GaussianRational::one;
    let k1 = spec.weights[0];
    let t = spec.t.clone();
    let sym = |n: &str| Form::symbol(s(&alg, n));
    let weighted = |n: &str| Form::term(one(), symbol_weights[&s(&alg, n)].clone(), &[s(&alg, n)]);
    let phi0 = sym("dz").sub(&Form::term(
        t.clone(),
        Weight::holomorphic(0, k1),
        &[s(&alg, &yb(2, 1))],
    ));
    let phib0 = sym("dzb").sub(&Form::term(
        t.conj(),
        Weight::antiholomorphic(0, k1),
        &[s(&alg, &y(2, 1))],
    ));

    let h = FormType::Holomorphic;
    let a = FormType::Antiholomorphic;
    let mut elements = vec![FrameElement::new("phi0", h, phi0)];
    for copy in [1, 2] {
        for j in 1..=m {
            elements.push(FrameElement::new(
                &format!("phi{copy}_{j}"),
                h,
                weighted(&y(copy, j)),
            ));
        }
    }
    elements.push(FrameElement::new("phib0", a, phib0));
    for copy in [1, 2] {
        for j in 1..=m {
            elements.push(FrameElement::new(
                &format!("phib{copy}_{j}"),
                a,
                weighted(&yb(copy, j)),
            ));
        }
    }
    let metric: Vec<String> = elements
        .iter()
        .filter(|e| e.form_type == h)
        .map(|e| e.name.clone())
        .collect();
    let metric: Vec<&str> = metric.iter().map(String::as_str).collect();
    let mut out = GeneratorListSpec::new("sawai-yamada", FrameSpan::exterior(alg, elements))
        .with_metric(&metric)
        .with_param("t", t.clone());
    if !t.is_zero() {
        let undeformed = SawaiYamadaSpec {
            t: GaussianRational::zero(),
            ..spec.clone()
        };
        out = out.with_reference(sawai_yamada_span(&undeformed)?);
    }
    Ok(out)
}

pub fn build_sawai_yamada(spec: &SawaiYamadaSpec) -> Result<Model, ModelError> {
    build_from_spec(sawai_yamada_span(spec)?)
}

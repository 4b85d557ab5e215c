//! Frame spans and the double complexes they carry.
//!
//! A frame span is a sum `Λ(F₁) + Λ(F₂) + …` of exterior algebras over sets
//! of frame elements. Frame elements carry their bidegree explicitly, since a
//! deformed (0,1) element may involve raw (1,0) symbols. The basis of the
//! span in bidegree `(p,q)` is the first maximal independent subfamily of the
//! frame monomials of that bidegree, enumerated set by set.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::algebra::{Algebra, FormType};
use super::error::DgaError;
use super::form::{Form, Monomial};
use crate::cohomology::{Bidegree, DoubleComplex};
use crate::linalg::{Echelon, ExactMatrix, GaussianRational, Insertion, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameElement {
    pub name: String,
    pub form_type: FormType,
    pub value: Form,
}

impl FrameElement {
    pub fn new(name: &str, form_type: FormType, value: Form) -> Self {
        Self {
            name: name.to_string(),
            form_type,
            value,
        }
    }
}

/// An algebra, a list of frame elements and the frame sets (indices into
/// `elements`) whose exterior algebras are summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpan {
    pub algebra: Algebra,
    pub elements: Vec<FrameElement>,
    pub sets: Vec<Vec<usize>>,
}

impl FrameSpan {
    pub fn new(algebra: Algebra, elements: Vec<FrameElement>, sets: Vec<Vec<usize>>) -> Self {
        Self {
            algebra,
            elements,
            sets,
        }
    }

    /// The span of a single exterior algebra on all elements.
    pub fn exterior(algebra: Algebra, elements: Vec<FrameElement>) -> Self {
        let all = (0..elements.len()).collect();
        Self::new(algebra, elements, vec![all])
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }

    /// Label of a frame monomial such as `phi1^phib2`, or `1`.
    pub fn label(&self, key: &[usize]) -> String {
        if key.is_empty() {
            return "1".to_string();
        }
        key.iter()
            .map(|&i| self.elements[i].name.as_str())
            .collect::<Vec<_>>()
            .join("^")
    }

    /// The raw expansion of a frame monomial (factors in index order).
    pub fn expand(&self, key: &[usize]) -> Form {
        key.iter()
            .fold(Form::one(), |acc, &i| acc.wedge(&self.elements[i].value))
    }

    /// Bidegree of a frame monomial with respect to the frame types.
    pub fn bidegree(&self, key: &[usize]) -> Bidegree {
        let p = key
            .iter()
            .filter(|&&i| self.elements[i].form_type == FormType::Holomorphic)
            .count();
        (p, key.len() - p)
    }

    fn validate_elements(&self) -> Result<(), DgaError> {
        for e in &self.elements {
            if e.value.is_zero() || e.value.degree() != Some(1) {
                return Err(DgaError::BadFrameElement(e.name.clone()));
            }
        }
        let mut names = std::collections::HashSet::new();
        for e in &self.elements {
            if !names.insert(e.name.as_str()) {
                return Err(DgaError::InvalidModel(format!(
                    "frame element `{}` declared twice",
                    e.name
                )));
            }
        }
        let mut index = MonomialIndex::default();
        let mut lin = Echelon::new();
        for e in &self.elements {
            if lin.insert(index.vector(&e.value)) == Insertion::Dependent {
                return Err(DgaError::FramesDependent(format!(
                    "`{}` is a combination of earlier elements",
                    e.name
                )));
            }
        }
        for set in &self.sets {
            for &i in set {
                if i >= self.elements.len() {
                    return Err(DgaError::InvalidModel(format!(
                        "frame set refers to element {i}"
                    )));
                }
            }
            let mut key = set.clone();
            key.sort_unstable();
            key.dedup();
            if self.expand(&key).is_zero() {
                return Err(DgaError::FramesDependent(format!(
                    "the wedge of {} vanishes",
                    self.label(&key)
                )));
            }
        }
        Ok(())
    }
}

/// Interns raw monomials as coordinate indices.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    ids: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn intern(&mut self, m: &Monomial) -> usize {
        if let Some(&i) = self.ids.get(m) {
            return i;
        }
        self.monomials.push(m.clone());
        self.ids.insert(m.clone(), self.monomials.len() - 1);
        self.monomials.len() - 1
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.ids.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn vector(&mut self, x: &Form) -> SparseVec {
        x.terms()
            .map(|(m, c)| (self.intern(m), c.clone()))
            .collect()
    }

    /// Coordinates of `x`, or the terms whose monomials were never interned.
    pub fn lookup(&self, x: &Form) -> Result<SparseVec, Form> {
        let mut missing = Form::zero();
        let mut v = SparseVec::new();
        for (m, c) in x.terms() {
            match self.get(m) {
                Some(i) => {
                    v.insert(i, c.clone());
                }
                None => missing.add_term(m.clone(), c.clone()),
            }
        }
        if missing.is_zero() {
            Ok(v)
        } else {
            Err(missing)
        }
    }

    pub fn form(&self, v: &SparseVec) -> Form {
        let mut f = Form::zero();
        for (&i, c) in v {
            f.add_term(self.monomials[i].clone(), c.clone());
        }
        f
    }
}

/// Combinations of `k` elements out of `items`, in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Per-degree solver: the echelon of all basis vectors of one total degree,
/// with the bidegree and position of each inserted vector.
#[derive(Clone, Debug, Default)]
struct DegreeSolver {
    echelon: Echelon,
    slots: Vec<(Bidegree, usize)>,
}

/// The selected basis of a frame span, with its raw expansions and the means
/// to express raw forms in frame coordinates.
#[derive(Clone, Debug)]
pub struct FrameBasis {
    span: FrameSpan,
    keys: BTreeMap<Bidegree, Vec<Vec<usize>>>,
    raw: BTreeMap<Bidegree, Vec<Form>>,
    index: MonomialIndex,
    solvers: BTreeMap<usize, DegreeSolver>,
}

impl FrameBasis {
    /// Selects the basis in every degree.
    pub fn new(span: FrameSpan) -> Result<Self, DgaError> {
        Self::with_degrees(span, None)
    }

    /// Selects the basis only in the given total degree (or all degrees).
    pub fn with_degrees(span: FrameSpan, only: Option<usize>) -> Result<Self, DgaError> {
        span.validate_elements()?;
        let mut candidates: BTreeMap<Bidegree, Vec<Vec<usize>>> = BTreeMap::new();
        for set in &span.sets {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let holo: Vec<usize> = sorted
                .iter()
                .copied()
                .filter(|&i| span.elements[i].form_type == FormType::Holomorphic)
                .collect();
            let anti: Vec<usize> = sorted
                .iter()
                .copied()
                .filter(|&i| span.elements[i].form_type == FormType::Antiholomorphic)
                .collect();
            for p in 0..=holo.len() {
                for q in 0..=anti.len() {
                    if only.is_some_and(|k| k != p + q) {
                        continue;
                    }
                    let slot = candidates.entry((p, q)).or_default();
                    let antis = combinations(&anti, q);
                    for i in combinations(&holo, p) {
                        for k in &antis {
                            let mut key: Vec<usize> = i.iter().chain(k).copied().collect();
                            key.sort_unstable();
                            if !slot.contains(&key) {
                                slot.push(key);
                            }
                        }
                    }
                }
            }
        }

        let mut index = MonomialIndex::default();
        let mut keys = BTreeMap::new();
        let mut raw = BTreeMap::new();
        for (&bideg, cands) in &candidates {
            let mut lin = Echelon::new();
            let (mut kept_keys, mut kept_raw) = (Vec::new(), Vec::new());
            for key in cands {
                let value = span.expand(key);
                if value.is_zero() {
                    continue;
                }
                if let Insertion::Pivot(_) = lin.insert(index.vector(&value)) {
                    kept_keys.push(key.clone());
                    kept_raw.push(value);
                }
            }
            keys.insert(bideg, kept_keys);
            raw.insert(bideg, kept_raw);
        }

        let mut solvers: BTreeMap<usize, DegreeSolver> = BTreeMap::new();
        for (&(p, q), forms) in &raw {
            let solver = solvers.entry(p + q).or_insert_with(|| DegreeSolver {
                echelon: Echelon::with_combinations(),
                slots: Vec::new(),
            });
            for (pos, f) in forms.iter().enumerate() {
                let v = index.lookup(f).expect("basis monomials are interned");
                if solver.echelon.insert(v) == Insertion::Dependent {
                    return Err(DgaError::BigradingInconsistent {
                        degree: p + q,
                        label: span.label(&keys[&(p, q)][pos]),
                    });
                }
                solver.slots.push(((p, q), pos));
            }
        }
        Ok(Self {
            span,
            keys,
            raw,
            index,
            solvers,
        })
    }

    pub fn span(&self) -> &FrameSpan {
        &self.span
    }

    pub fn algebra(&self) -> &Algebra {
        &self.span.algebra
    }

    pub fn dim(&self, bideg: Bidegree) -> usize {
        self.keys.get(&bideg).map_or(0, Vec::len)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.keys.keys().copied()
    }

    pub fn keys(&self, bideg: Bidegree) -> &[Vec<usize>] {
        self.keys.get(&bideg).map_or(&[], Vec::as_slice)
    }

    pub fn raw(&self, bideg: Bidegree) -> &[Form] {
        self.raw.get(&bideg).map_or(&[], Vec::as_slice)
    }

    pub fn labels(&self, bideg: Bidegree) -> Vec<String> {
        self.keys(bideg)
            .iter()
            .map(|k| self.span.label(k))
            .collect()
    }

    /// Position of the basis element with exactly these frame factors.
    pub fn position(&self, names: &[&str]) -> Option<(Bidegree, usize)> {
        let mut key = names
            .iter()
            .map(|n| self.span.element(n))
            .collect::<Option<Vec<_>>>()?;
        key.sort_unstable();
        let bideg = self.span.bidegree(&key);
        let pos = self.keys(bideg).iter().position(|k| *k == key)?;
        Some((bideg, pos))
    }

    /// Expresses a homogeneous raw form in the basis, grouped by bidegree.
    pub fn coordinates(
        &self,
        x: &Form,
    ) -> Result<BTreeMap<Bidegree, Vec<GaussianRational>>, DgaError> {
        let mut out = BTreeMap::new();
        if x.is_zero() {
            return Ok(out);
        }
        let unreachable = |f: &Form| DgaError::NotInFrameSpan {
            residual: self.algebra().render(f),
        };
        let Some(degree) = x.degree() else {
            let top = x.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let mut total = BTreeMap::new();
            for k in 0..=top {
                let part = x.filter(|m| m.degree() == k);
                for (b, v) in self.coordinates(&part)? {
                    total.insert(b, v);
                }
            }
            return Ok(total);
        };
        let v = self
            .index
            .lookup(x)
            .map_err(|missing| unreachable(&missing))?;
        let solver = self.solvers.get(&degree).ok_or_else(|| unreachable(x))?;
        let coeffs = solver
            .echelon
            .solve(&v)
            .map_err(|res| unreachable(&self.index.form(&res)))?;
        for (slot, c) in coeffs {
            let (bideg, pos) = solver.slots[slot];
            out.entry(bideg)
                .or_insert_with(|| vec![GaussianRational::zero(); self.dim(bideg)])[pos] = c;
        }
        Ok(out)
    }

    /// Reassembles a raw form from coordinates on one bidegree.
    pub fn form_of(&self, bideg: Bidegree, coeffs: &[GaussianRational]) -> Form {
        let mut out = Form::zero();
        for (f, c) in self.raw(bideg).iter().zip(coeffs) {
            if !c.is_zero() {
                out.add_assign(&f.scale(c));
            }
        }
        out
    }

    /// Named coefficients, skipping zeros.
    pub fn describe(
        &self,
        bideg: Bidegree,
        coeffs: &[GaussianRational],
    ) -> Vec<(String, GaussianRational)> {
        self.keys(bideg)
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.span.label(k), c.clone()))
            .collect()
    }
}

/// Builds the double complex of a frame basis: computes `d` of every basis
/// element by the Leibniz rule, re-expresses it in the span and splits it
/// into the `∂` and `∂̄` parts by frame bidegree.
pub fn build_double_complex(basis: &FrameBasis) -> Result<DoubleComplex, DgaError> {
    let n = basis.algebra().n();
    for (p, q) in basis.bidegrees() {
        if basis.dim((p, q)) > 0 && (p > n || q > n) {
            return Err(DgaError::InvalidModel(format!(
                "frame span reaches bidegree ({p},{q}) beyond n = {n}"
            )));
        }
    }
    let mut del: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    let mut delbar: BTreeMap<Bidegree, ExactMatrix> = BTreeMap::new();
    for (p, q) in basis.bidegrees().collect::<Vec<_>>() {
        let cols = basis.dim((p, q));
        let mut dm = ExactMatrix::zeros(basis.dim((p + 1, q)), cols);
        let mut dbm = ExactMatrix::zeros(basis.dim((p, q + 1)), cols);
        for (j, value) in basis.raw((p, q)).iter().enumerate() {
            let image = basis.algebra().d(value);
            let label = || basis.span().label(&basis.keys((p, q))[j]);
            let coords = basis.coordinates(&image).map_err(|e| match e {
                DgaError::NotInFrameSpan { residual } => DgaError::SpanNotClosed {
                    label: label(),
                    residual,
                },
                other => other,
            })?;
            for (target, v) in coords {
                let m = if target == (p + 1, q) {
                    &mut dm
                } else if target == (p, q + 1) {
                    &mut dbm
                } else {
                    if v.iter().all(Zero::is_zero) {
                        continue;
                    }
                    return Err(DgaError::WrongBidegree {
                        label: label(),
                        p: target.0,
                        q: target.1,
                    });
                };
                for (i, c) in v.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
        }
        if p <= n && q <= n {
            del.insert((p, q), dm);
            delbar.insert((p, q), dbm);
        }
    }
    let labels = basis
        .bidegrees()
        .filter(|&(p, q)| p <= n && q <= n)
        .map(|b| (b, basis.labels(b)))
        .collect();
    let complex = DoubleComplex::new(n, labels, del, delbar)
        .map_err(|e| DgaError::InvalidModel(e.to_string()))?;
    complex
        .validate()
        .map_err(|e| DgaError::StructuralViolation(e.to_string()))?;
    Ok(complex)
}

/// Coefficients of a raw form on frame monomials, grouped by frame bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeSplit {
    pub parts: BTreeMap<Bidegree, Vec<(String, GaussianRational)>>,
}

impl BidegreeSplit {
    pub fn part(&self, bideg: Bidegree) -> &[(String, GaussianRational)] {
        self.parts.get(&bideg).map_or(&[], Vec::as_slice)
    }

    /// The `∂`-part of `d x` for `x` of bidegree `source`.
    pub fn del_part(&self, source: Bidegree) -> &[(String, GaussianRational)] {
        self.part((source.0 + 1, source.1))
    }

    /// The `∂̄`-part of `d x` for `x` of bidegree `source`.
    pub fn delbar_part(&self, source: Bidegree) -> &[(String, GaussianRational)] {
        self.part((source.0, source.1 + 1))
    }
}

/// Expresses `x` in the frame monomials of `Λ(frame)` of its degree.
pub fn split_by_bidegree(
    algebra: &Algebra,
    x: &Form,
    frame: &[FrameElement],
) -> Result<BidegreeSplit, DgaError> {
    let span = FrameSpan::exterior(algebra.clone(), frame.to_vec());
    let basis = FrameBasis::with_degrees(span, x.degree())?;
    let coords = basis.coordinates(x)?;
    let parts = coords
        .into_iter()
        .map(|(b, v)| (b, basis.describe(b, &v)))
        .filter(|(_, v)| !v.is_empty())
        .collect();
    Ok(BidegreeSplit { parts })
}

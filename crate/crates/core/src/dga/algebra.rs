use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::error::DgaError;
use super::form::{Form, Monomial, SymbolId};
use super::weight::Weight;
use crate::linalg::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FormType {
    /// (1,0)
    Holomorphic,
    /// (0,1)
    Antiholomorphic,
}

impl FormType {
    pub fn conj(self) -> FormType {
        match self {
            FormType::Holomorphic => FormType::Antiholomorphic,
            FormType::Antiholomorphic => FormType::Holomorphic,
        }
    }

    pub fn bidegree(self) -> (usize, usize) {
        match self {
            FormType::Holomorphic => (1, 0),
            FormType::Antiholomorphic => (0, 1),
        }
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.bidegree();
        write!(f, "({p},{q})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSymbol {
    pub name: String,
    pub form_type: FormType,
    pub conjugate: SymbolId,
    pub differential: Form,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCoordinate {
    pub name: String,
    pub holomorphic: SymbolId,
    pub antiholomorphic: SymbolId,
}

/// A coordinate declaration before symbol ids are assigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolDecl {
    pub name: String,
    pub form_type: FormType,
    pub conjugate: String,
}

impl SymbolDecl {
    pub fn new(name: &str, form_type: FormType, conjugate: &str) -> Self {
        Self {
            name: name.to_string(),
            form_type,
            conjugate: conjugate.to_string(),
        }
    }

    /// The two declarations of a conjugate pair `holo`, `anti`.
    pub fn pair(holo: &str, anti: &str) -> [SymbolDecl; 2] {
        [
            Self::new(holo, FormType::Holomorphic, anti),
            Self::new(anti, FormType::Antiholomorphic, holo),
        ]
    }
}

/// The ambient weighted exterior algebra: coordinate 1-form symbols with
/// structural differentials, plus the weight coordinates that give
/// characters their differentials.
///
/// Symbols are numbered with all (1,0) symbols first, in the order their
/// pairs were declared, followed by the (0,1) partners in the same order, so
/// that the conjugate of symbol `i` is `(i + n) mod 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    symbols: Vec<CoordinateSymbol>,
    weights: Vec<WeightCoordinate>,
    index: HashMap<String, SymbolId>,
}

impl Algebra {
    pub fn new(decls: &[SymbolDecl]) -> Result<Self, DgaError> {
        let mut by_name: HashMap<&str, &SymbolDecl> = HashMap::new();
        for d in decls {
            if by_name.insert(d.name.as_str(), d).is_some() {
                return Err(DgaError::DuplicateSymbol(d.name.clone()));
            }
        }
        for d in decls {
            let bad = |reason: &str| DgaError::BadConjugatePair {
                name: d.name.clone(),
                reason: reason.to_string(),
            };
            let partner = by_name
                .get(d.conjugate.as_str())
                .ok_or_else(|| bad("conjugate partner is not declared"))?;
            if partner.conjugate != d.name {
                return Err(bad("conjugation is not an involution"));
            }
            if partner.form_type != d.form_type.conj() {
                return Err(bad("a symbol and its conjugate must have opposite types"));
            }
        }
        let holos: Vec<&SymbolDecl> = {
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::new();
            for d in decls {
                let holo = if d.form_type == FormType::Holomorphic {
                    d
                } else {
                    by_name[d.conjugate.as_str()]
                };
                if seen.insert(holo.name.as_str()) {
                    out.push(holo);
                }
            }
            out
        };
        let n = holos.len();
        let mut symbols = Vec::with_capacity(2 * n);
        for (i, h) in holos.iter().enumerate() {
            symbols.push(CoordinateSymbol {
                name: h.name.clone(),
                form_type: FormType::Holomorphic,
                conjugate: i + n,
                differential: Form::zero(),
            });
        }
        for (i, h) in holos.iter().enumerate() {
            symbols.push(CoordinateSymbol {
                name: h.conjugate.clone(),
                form_type: FormType::Antiholomorphic,
                conjugate: i,
                differential: Form::zero(),
            });
        }
        let index = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.clone(), i))
            .collect();
        Ok(Self {
            symbols,
            weights: Vec::new(),
            index,
        })
    }

    /// Convenience constructor from `(holomorphic, antiholomorphic)` name pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, DgaError> {
        let decls: Vec<SymbolDecl> = pairs
            .iter()
            .flat_map(|(h, a)| SymbolDecl::pair(h, a))
            .collect();
        Self::new(&decls)
    }

    /// Declares a weight coordinate `z` with `dz = holo` and `dz̄ = anti`.
    pub fn add_weight_coordinate(
        &mut self,
        name: &str,
        holo: &str,
        anti: &str,
    ) -> Result<usize, DgaError> {
        let bad = |reason: &str| DgaError::BadWeightCoordinate {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        if self.weights.iter().any(|w| w.name == name) {
            return Err(bad("declared twice"));
        }
        let h = self
            .id(holo)
            .ok_or_else(|| DgaError::UnknownSymbol(holo.to_string()))?;
        let a = self
            .id(anti)
            .ok_or_else(|| DgaError::UnknownSymbol(anti.to_string()))?;
        if self.symbols[h].form_type != FormType::Holomorphic || self.symbols[h].conjugate != a {
            return Err(bad(
                "the holomorphic and antiholomorphic forms must be conjugate partners",
            ));
        }
        self.weights.push(WeightCoordinate {
            name: name.to_string(),
            holomorphic: h,
            antiholomorphic: a,
        });
        Ok(self.weights.len() - 1)
    }

    /// Installs structural differentials. A differential given for only one
    /// member of a conjugate pair is conjugated onto the other; when both are
    /// given they must be conjugate.
    pub fn set_differentials(&mut self, given: &[(SymbolId, Form)]) -> Result<(), DgaError> {
        let mut declared: BTreeMap<SymbolId, Form> = BTreeMap::new();
        for (s, f) in given {
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(DgaError::DifferentialNotTwoForm(self.name(*s).to_string()));
            }
            if declared.insert(*s, f.clone()).is_some() {
                return Err(DgaError::DuplicateSymbol(self.name(*s).to_string()));
            }
        }
        for s in 0..self.symbols.len() {
            let partner = self.symbols[s].conjugate;
            let value = match (declared.get(&s), declared.get(&partner)) {
                (Some(f), Some(g)) => {
                    if self.conj(g) != *f {
                        return Err(DgaError::ConjugateDifferentialMismatch(
                            self.name(s).to_string(),
                        ));
                    }
                    f.clone()
                }
                (Some(f), None) => f.clone(),
                (None, Some(g)) => self.conj(g),
                (None, None) => Form::zero(),
            };
            self.symbols[s].differential = value;
        }
        Ok(())
    }

    /// Number of (1,0) symbols.
    pub fn n(&self) -> usize {
        self.symbols.len() / 2
    }

    pub fn symbols(&self) -> &[CoordinateSymbol] {
        &self.symbols
    }

    pub fn weight_coordinates(&self) -> &[WeightCoordinate] {
        &self.weights
    }

    pub fn weight_coordinate(&self, name: &str) -> Option<usize> {
        self.weights.iter().position(|w| w.name == name)
    }

    pub fn id(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id].name
    }

    pub fn form_type(&self, id: SymbolId) -> FormType {
        self.symbols[id].form_type
    }

    /// Raw bidegree with respect to the symbol types.
    pub fn bidegree(&self, m: &Monomial) -> (usize, usize) {
        let p = m.symbols().iter().filter(|&&s| s < self.n()).count();
        (p, m.degree() - p)
    }

    pub fn conj_monomial(&self, m: &Monomial) -> (i8, Monomial) {
        let mapped: Vec<SymbolId> = m
            .symbols()
            .iter()
            .map(|&s| self.symbols[s].conjugate)
            .collect();
        Monomial::new(m.weight().conj(), mapped).expect("conjugation preserves distinctness")
    }

    /// Complex conjugation.
    pub fn conj(&self, x: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in x.terms() {
            let (sign, cm) = self.conj_monomial(m);
            let c = c.conj();
            out.add_term(cm, if sign < 0 { -c } else { c });
        }
        out
    }

    fn d_monomial(&self, m: &Monomial, c: &GaussianRational, out: &mut Form) {
        let body = Monomial::new(Weight::trivial(), m.symbols().to_vec())
            .expect("normalized")
            .1;
        for (j, &(a, b)) in m.weight().pairs().iter().enumerate() {
            let wc = &self.weights[j];
            for (exp, sym) in [(a, wc.holomorphic), (b, wc.antiholomorphic)] {
                if exp.is_zero() {
                    continue;
                }
                let one_form = Monomial::new(m.weight().clone(), vec![sym])
                    .expect("single symbol")
                    .1;
                if let Some((sign, prod)) = one_form.wedge(&body) {
                    let coeff = c * &exp.to_scalar();
                    out.add_term(prod, if sign < 0 { -coeff } else { coeff });
                }
            }
        }
        let syms = m.symbols();
        for (i, &s) in syms.iter().enumerate() {
            let ds = &self.symbols[s].differential;
            if ds.is_zero() {
                continue;
            }
            let prefix = Form::term(GaussianRational::one(), m.weight().clone(), &syms[..i]);
            let suffix = Form::term(GaussianRational::one(), Weight::trivial(), &syms[i + 1..]);
            let piece = prefix.wedge(ds).wedge(&suffix);
            let coeff = if i % 2 == 0 { c.clone() } else { -c };
            for (pm, pc) in piece.terms() {
                out.add_term(pm.clone(), pc * &coeff);
            }
        }
    }

    /// The exterior derivative, extended from the structural differentials
    /// by the Leibniz rule and `d e^w = (Σ aⱼ dzⱼ + bⱼ dz̄ⱼ) e^w`.
    pub fn d(&self, x: &Form) -> Form {
        let mut out = Form::zero();
        for (m, c) in x.terms() {
            self.d_monomial(m, c, &mut out);
        }
        out
    }

    /// Checks `d² = 0` on every symbol and that the weight coordinates have
    /// closed differentials (needed for `d² e^w = 0`).
    pub fn validate_structural_differentials(&self) -> Result<(), DgaError> {
        for wc in &self.weights {
            for s in [wc.holomorphic, wc.antiholomorphic] {
                if !self.symbols[s].differential.is_zero() {
                    return Err(DgaError::StructuralViolation(format!(
                        "weight coordinate `{}` needs d{} = 0",
                        wc.name,
                        self.name(s)
                    )));
                }
            }
        }
        for (s, sym) in self.symbols.iter().enumerate() {
            let dd = self.d(&sym.differential);
            if !dd.is_zero() {
                return Err(DgaError::StructuralViolation(format!(
                    "d(d {}) = {} ≠ 0",
                    self.name(s),
                    self.render(&dd)
                )));
            }
        }
        Ok(())
    }

    /// Checks that the frame `e^{w_s}·s` is closed under the structural
    /// differentials: every term `c·e^w·a∧b` of `d s` must satisfy
    /// `w + w_a + w_b = w_s`. Symbols not listed carry the trivial weight.
    pub fn validate_weight_compatibility(
        &self,
        symbol_weights: &BTreeMap<SymbolId, Weight>,
    ) -> Result<(), DgaError> {
        let weight_of = |s: SymbolId| symbol_weights.get(&s).cloned().unwrap_or_default();
        for (s, sym) in self.symbols.iter().enumerate() {
            for (m, _) in sym.differential.terms() {
                let total = m
                    .symbols()
                    .iter()
                    .fold(m.weight().clone(), |acc, &t| acc.add(&weight_of(t)));
                if total != weight_of(s) {
                    let names: Vec<&str> = m.symbols().iter().map(|&t| self.name(t)).collect();
                    return Err(DgaError::StructuralViolation(format!(
                        "weights incompatible: d {} contains {} with total weight {:?}, expected {:?}",
                        self.name(s),
                        names.join("^"),
                        total,
                        weight_of(s)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        if !m.weight().is_trivial() {
            let flat: Vec<String> = m.weight().flat().iter().map(ToString::to_string).collect();
            parts.push(format!("w[{}]", flat.join(",")));
        }
        let syms: Vec<&str> = m.symbols().iter().map(|&s| self.name(s)).collect();
        if !syms.is_empty() {
            parts.push(syms.join("^"));
        }
        parts.join("*")
    }

    /// Renders a form in the DGA file syntax, e.g. `2*w[-1]*dz1^dz2 - dzb3`.
    pub fn render(&self, x: &Form) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in x.terms().enumerate() {
            let negative = c.im().is_zero() && c.re().is_negative()
                || c.re().is_zero() && c.im().is_negative();
            let shown = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = self.render_monomial(m);
            let coeff = if !shown.re().is_zero() && !shown.im().is_zero() {
                format!("({shown})")
            } else {
                shown.to_string()
            };
            match (shown.is_one(), body.is_empty()) {
                (true, false) => out.push_str(&body),
                (_, true) => out.push_str(&coeff),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::weight::GaussInt;

    fn nakamura() -> Algebra {
        let mut a =
            Algebra::from_pairs(&[("dz1", "dzb1"), ("dz2", "dzb2"), ("dz3", "dzb3")]).unwrap();
        a.add_weight_coordinate("z1", "dz1", "dzb1").unwrap();
        a
    }

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn global_order_puts_holomorphic_symbols_first() {
        let decls = [
            SymbolDecl::new("b", FormType::Antiholomorphic, "a"),
            SymbolDecl::new("x", FormType::Holomorphic, "y"),
            SymbolDecl::new("a", FormType::Holomorphic, "b"),
            SymbolDecl::new("y", FormType::Antiholomorphic, "x"),
        ];
        let alg = Algebra::new(&decls).unwrap();
        let names: Vec<&str> = (0..4).map(|i| alg.name(i)).collect();
        assert_eq!(names, ["a", "x", "b", "y"]);
    }

    #[test]
    fn broken_pairs_are_rejected() {
        let decls = [
            SymbolDecl::new("a", FormType::Holomorphic, "b"),
            SymbolDecl::new("b", FormType::Holomorphic, "a"),
        ];
        assert!(matches!(
            Algebra::new(&decls),
            Err(DgaError::BadConjugatePair { .. })
        ));
        let decls = [SymbolDecl::new("a", FormType::Holomorphic, "b")];
        assert!(Algebra::new(&decls).is_err());
    }

    #[test]
    fn differential_of_weighted_symbol() {
        let a = nakamura();
        let dz1 = a.id("dz1").unwrap();
        let dz2 = a.id("dz2").unwrap();
        let x = Form::term(g("1"), Weight::holomorphic(0, -1), &[dz2]);
        assert_eq!(
            a.d(&x),
            Form::term(g("-1"), Weight::holomorphic(0, -1), &[dz1, dz2])
        );
        assert!(a.d(&Form::symbol(dz1)).is_zero());
    }

    #[test]
    fn conjugation_swaps_weight_slots_and_tracks_sign() {
        let a = nakamura();
        let dz1 = a.id("dz1").unwrap();
        let dzb2 = a.id("dzb2").unwrap();
        let w = Weight::new(vec![(GaussInt::new(1, 1), GaussInt::ZERO)]);
        let x = Form::term(g("i"), w.clone(), &[dz1, dzb2]);
        let cx = a.conj(&x);
        // conj(i e^{(1+i)z} dz1∧dz̄2) = -i e^{(1-i)z̄} dz̄1∧dz2 = i e^{(1-i)z̄} dz2∧dz̄1
        let expected = Form::term(
            g("i"),
            w.conj(),
            &[a.id("dz2").unwrap(), a.id("dzb1").unwrap()],
        );
        assert_eq!(cx, expected);
        assert_eq!(a.conj(&cx), x);
    }

    #[test]
    fn heisenberg_differential_and_validation() {
        let mut a =
            Algebra::from_pairs(&[("dz", "dzb"), ("y1", "yb1"), ("y2", "yb2"), ("y3", "yb3")])
                .unwrap();
        a.add_weight_coordinate("z", "dz", "dzb").unwrap();
        let (y1, y2, y3) = (
            a.id("y1").unwrap(),
            a.id("y2").unwrap(),
            a.id("y3").unwrap(),
        );
        a.set_differentials(&[(y3, Form::term(g("-1"), Weight::trivial(), &[y1, y2]))])
            .unwrap();
        let yb3 = a.id("yb3").unwrap();
        assert_eq!(
            a.symbols()[yb3].differential,
            Form::term(
                g("-1"),
                Weight::trivial(),
                &[a.id("yb1").unwrap(), a.id("yb2").unwrap()]
            )
        );
        a.validate_structural_differentials().unwrap();

        // d(e^{-2z} y3) = -2 e^{-2z} dz∧y3 - e^{-2z} y1∧y2
        let w = Weight::holomorphic(0, -2);
        let dz = a.id("dz").unwrap();
        let x = Form::term(g("1"), w.clone(), &[y3]);
        let expected =
            Form::term(g("-2"), w.clone(), &[dz, y3]).add(&Form::term(g("-1"), w, &[y1, y2]));
        assert_eq!(a.d(&x), expected);

        let weights = |k3: i64| {
            let mut m = BTreeMap::new();
            m.insert(y1, Weight::holomorphic(0, -1));
            m.insert(y2, Weight::holomorphic(0, -1));
            m.insert(y3, Weight::holomorphic(0, -k3));
            m
        };
        a.validate_weight_compatibility(&weights(2)).unwrap();
        assert!(a.validate_weight_compatibility(&weights(3)).is_err());
    }

    #[test]
    fn inconsistent_conjugate_differentials_are_rejected() {
        let mut a = Algebra::from_pairs(&[("x", "xb"), ("y", "yb")]).unwrap();
        let (x, y, xb, yb) = (0, 1, 2, 3);
        let err = a.set_differentials(&[
            (y, Form::term(g("1"), Weight::trivial(), &[x, xb])),
            (yb, Form::term(g("2"), Weight::trivial(), &[x, xb])),
        ]);
        assert!(matches!(
            err,
            Err(DgaError::ConjugateDifferentialMismatch(_))
        ));
    }

    #[test]
    fn non_nilpotent_structure_fails_validation() {
        // dx = y∧x̄, dy = x∧ȳ: d²x = x∧ȳ∧x̄ - y∧ȳ∧x ≠ 0.
        let mut a = Algebra::from_pairs(&[("x", "xb"), ("y", "yb")]).unwrap();
        let (x, y, xb, yb) = (0, 1, 2, 3);
        a.set_differentials(&[
            (x, Form::term(g("1"), Weight::trivial(), &[y, xb])),
            (y, Form::term(g("1"), Weight::trivial(), &[x, yb])),
        ])
        .unwrap();
        assert!(a.validate_structural_differentials().is_err());
    }

    #[test]
    fn rendering() {
        let a = nakamura();
        let x = Form::term(g("-2"), Weight::holomorphic(0, -1), &[1, 0]).add(&Form::term(
            g("1/3+i"),
            Weight::trivial(),
            &[5],
        ));
        assert_eq!(a.render(&x), "2*w[-1]*dz1^dz2 + (1/3+i)*dzb3");
    }
}

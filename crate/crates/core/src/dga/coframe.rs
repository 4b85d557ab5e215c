//! Exact bigrading of raw forms with respect to a unitary coframe.
//!
//! Given (1,0) forms `θ₁…θ_n` and their conjugates, every coordinate symbol
//! is written as `s = Σ fᵢ θᵢ` with coefficients in the group ring of
//! characters (finite sums `Σ c·e^w`). This is possible whenever Gauss–Jordan
//! elimination finds a single-character pivot in each column, which is the
//! case for every frame change of the form `dz - t·e^w·dz̄'`. Expanding a raw
//! form in `θ_I ∧ θ̄_K` then gives its true bidegree decomposition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::Algebra;
use super::error::DgaError;
use super::form::{Form, Monomial, SymbolId};
use super::weight::Weight;
use crate::cohomology::Bidegree;
use crate::linalg::GaussianRational;

/// A finite sum `Σ c_w e^w` of characters.
pub type Character = BTreeMap<Weight, GaussianRational>;

fn char_add(acc: &mut Character, w: Weight, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(w.clone()).or_insert_with(GaussianRational::zero);
    *slot += &c;
    if slot.is_zero() {
        acc.remove(&w);
    }
}

fn char_mul(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            char_add(&mut out, w1.add(w2), c1 * c2);
        }
    }
    out
}

fn char_sub_assign(a: &mut Character, b: &Character) {
    for (w, c) in b {
        char_add(a, w.clone(), -c);
    }
}

/// Inverse of a single-term character `c·e^w`.
fn char_unit_inverse(a: &Character) -> Option<Character> {
    if a.len() != 1 {
        return None;
    }
    let (w, c) = a.iter().next()?;
    Some([(w.neg(), c.inv()?)].into_iter().collect())
}

fn char_conj(a: &Character) -> Character {
    let mut out = Character::new();
    for (w, c) in a {
        char_add(&mut out, w.conj(), c.conj());
    }
    out
}

/// A form written in the coframe: sorted index sets (`0..n` for `θᵢ`,
/// `n..2n` for `θ̄ᵢ`) with character coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoframeForm {
    pub terms: BTreeMap<Vec<usize>, Character>,
}

impl CoframeForm {
    fn add(&mut self, key: Vec<usize>, f: Character) {
        let slot = self.terms.entry(key.clone()).or_default();
        for (w, c) in f {
            char_add(slot, w, c);
        }
        if slot.is_empty() {
            self.terms.remove(&key);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Coframe {
    algebra: Algebra,
    n: usize,
    theta: Vec<Form>,
    /// For each symbol, its expansion `Σ fᵢ θᵢ`.
    inverse: Vec<Vec<(usize, Character)>>,
}

fn character_of(m: &Monomial, c: &GaussianRational) -> Character {
    [(m.weight().clone(), c.clone())].into_iter().collect()
}

impl Coframe {
    /// Builds the coframe `θ₁…θ_n, θ̄₁…θ̄_n` from the (1,0) forms `holo` and
    /// inverts it. Fails when the forms are not 1-forms, when their number
    /// does not match the algebra, or when inversion needs a pivot that is
    /// not a single character.
    pub fn new(algebra: &Algebra, holo: &[Form]) -> Result<Self, DgaError> {
        let n = holo.len();
        let unavailable = |why: &str| DgaError::InvalidModel(format!("coframe unavailable: {why}"));
        if algebra.symbols().len() != 2 * n {
            return Err(unavailable(
                "the metric frame must have one element per (1,0) symbol",
            ));
        }
        let mut theta: Vec<Form> = holo.to_vec();
        theta.extend(holo.iter().map(|f| algebra.conj(f)));
        let dim = 2 * n;
        // rows: θ_r = Σ_s m[r][s]·s, augmented with the identity in θ-coordinates.
        let mut m: Vec<Vec<Character>> = vec![vec![Character::new(); dim]; dim];
        let mut aug: Vec<Vec<Character>> = vec![vec![Character::new(); dim]; dim];
        for (r, f) in theta.iter().enumerate() {
            if f.degree() != Some(1) {
                return Err(unavailable("metric frame elements must be nonzero 1-forms"));
            }
            for (mono, c) in f.terms() {
                let s = mono.symbols()[0];
                char_add(&mut m[r][s], mono.weight().clone(), c.clone());
            }
            aug[r][r] = [(Weight::trivial(), GaussianRational::one())]
                .into_iter()
                .collect();
        }
        for col in 0..dim {
            let pivot = (col..dim)
                .find(|&r| char_unit_inverse(&m[r][col]).is_some())
                .ok_or_else(|| unavailable("frame change has no single-character pivot"))?;
            m.swap(col, pivot);
            aug.swap(col, pivot);
            let inv = char_unit_inverse(&m[col][col]).expect("checked unit");
            m[col] = m[col].iter().map(|x| char_mul(x, &inv)).collect();
            aug[col] = aug[col].iter().map(|x| char_mul(x, &inv)).collect();
            for r in 0..dim {
                if r == col || m[r][col].is_empty() {
                    continue;
                }
                let factor = m[r][col].clone();
                for s in 0..dim {
                    let dm = char_mul(&factor, &m[col][s]);
                    char_sub_assign(&mut m[r][s], &dm);
                    let da = char_mul(&factor, &aug[col][s]);
                    char_sub_assign(&mut aug[r][s], &da);
                }
            }
        }
        // Now row s reads: s = Σ_i aug[s][i]·θ_i.
        let inverse = aug
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_empty())
                    .collect()
            })
            .collect();
        Ok(Self {
            algebra: algebra.clone(),
            n,
            theta,
            inverse,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// The raw forms `θ₁…θ_n, θ̄₁…θ̄_n`.
    pub fn theta(&self) -> &[Form] {
        &self.theta
    }

    pub fn expand(&self, x: &Form) -> CoframeForm {
        let mut out = CoframeForm::default();
        for (mono, c) in x.terms() {
            let mut acc: Vec<(Vec<usize>, Character)> = vec![(Vec::new(), character_of(mono, c))];
            for &s in mono.symbols() {
                acc = self.append_symbol(&acc, s);
            }
            for (k, f) in acc {
                out.add(k, f);
            }
        }
        out
    }

    fn append_symbol(
        &self,
        acc: &[(Vec<usize>, Character)],
        s: SymbolId,
    ) -> Vec<(Vec<usize>, Character)> {
        let mut merged: BTreeMap<Vec<usize>, Character> = BTreeMap::new();
        for (key, f) in acc {
            for (i, g) in &self.inverse[s] {
                if key.contains(i) {
                    continue;
                }
                // Appending θ_i at the end, then sorting: one swap per larger index.
                let larger = key.iter().filter(|&&k| k > *i).count();
                let mut new_key = key.clone();
                let pos = new_key.partition_point(|&k| k < *i);
                new_key.insert(pos, *i);
                let mut coeff = char_mul(f, g);
                if larger % 2 == 1 {
                    coeff = coeff.into_iter().map(|(w, c)| (w, -c)).collect();
                }
                let slot = merged.entry(new_key).or_default();
                for (w, c) in coeff {
                    char_add(slot, w, c);
                }
            }
        }
        merged.into_iter().filter(|(_, f)| !f.is_empty()).collect()
    }

    /// Raw form of `θ_key` (indices sorted).
    pub fn theta_monomial(&self, key: &[usize]) -> Form {
        key.iter()
            .fold(Form::one(), |acc, &i| acc.wedge(&self.theta[i]))
    }

    pub fn collapse(&self, y: &CoframeForm) -> Form {
        let mut out = Form::zero();
        for (key, f) in &y.terms {
            let base = self.theta_monomial(key);
            for (w, c) in f {
                out.add_assign(&base.shift(w).scale(c));
            }
        }
        out
    }

    pub fn key_bidegree(&self, key: &[usize]) -> Bidegree {
        let p = key.iter().filter(|&&i| i < self.n).count();
        (p, key.len() - p)
    }

    /// Decomposes a raw form into its bidegree components (as raw forms).
    pub fn bidegree_parts(&self, x: &Form) -> BTreeMap<Bidegree, Form> {
        let expanded = self.expand(x);
        let mut grouped: BTreeMap<Bidegree, CoframeForm> = BTreeMap::new();
        for (key, f) in expanded.terms {
            grouped
                .entry(self.key_bidegree(&key))
                .or_default()
                .add(key, f);
        }
        grouped
            .into_iter()
            .map(|(b, y)| (b, self.collapse(&y)))
            .collect()
    }

    /// The bidegree components of `d x`.
    pub fn d_parts(&self, x: &Form) -> BTreeMap<Bidegree, Form> {
        self.bidegree_parts(&self.algebra.d(x))
    }

    /// `∗̄`-type duality on coframe monomials, up to a constant per bidegree:
    /// `f·θ_I∧θ̄_K ↦ f̄·ε·θ_{I^c}∧θ̄_{K^c}` with `ε` the sign making
    /// `θ_I∧θ̄_K∧θ_{I^c}∧θ̄_{K^c}` a positive multiple of the volume form.
    pub fn star_bar(&self, x: &Form) -> Form {
        let n = self.n;
        let mut out = CoframeForm::default();
        for (key, f) in self.expand(x).terms {
            let holo: Vec<usize> = (0..n).filter(|i| !key.contains(i)).collect();
            let anti: Vec<usize> = (n..2 * n).filter(|i| !key.contains(i)).collect();
            let mut complement: Vec<usize> = holo.iter().chain(&anti).copied().collect();
            let mut order: Vec<usize> = key.iter().copied().filter(|&i| i < n).collect();
            order.extend(key.iter().copied().filter(|&i| i >= n));
            order.extend(&holo);
            order.extend(&anti);
            let sign = super::form::sort_with_sign(&mut order).expect("disjoint");
            complement.sort_unstable();
            let mut g = char_conj(&f);
            if sign < 0 {
                g = g.into_iter().map(|(w, c)| (w, -c)).collect();
            }
            out.add(complement, g);
        }
        self.collapse(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn case1() -> (Algebra, Coframe) {
        let alg = Algebra::from_pairs(&[("dz1", "dzb1"), ("dz2", "dzb2")]).unwrap();
        let theta1 = Form::symbol(0).sub(&Form::symbol(2).scale(&g("1/2")));
        let cf = Coframe::new(&alg, &[theta1, Form::symbol(1)]).unwrap();
        (alg, cf)
    }

    #[test]
    fn inversion_reproduces_symbols() {
        let (_, cf) = case1();
        for s in 0..4 {
            let x = Form::symbol(s);
            assert_eq!(cf.collapse(&cf.expand(&x)), x);
        }
        // dz1 = (4/3)θ1 + (2/3)θ̄1
        let e = cf.expand(&Form::symbol(0));
        assert_eq!(e.terms[&vec![0]][&Weight::trivial()], g("4/3"));
        assert_eq!(e.terms[&vec![2]][&Weight::trivial()], g("2/3"));
    }

    #[test]
    fn bidegree_parts_sum_back() {
        let (_, cf) = case1();
        let x = Form::symbol(0)
            .wedge(&Form::symbol(1))
            .add(&Form::symbol(2).wedge(&Form::symbol(3)));
        let parts = cf.bidegree_parts(&x);
        let total = parts.values().fold(Form::zero(), |acc, f| acc.add(f));
        assert_eq!(total, x);
        assert!(parts.keys().all(|&(p, q)| p + q == 2));
    }

    #[test]
    fn non_unit_pivot_is_reported() {
        let mut alg = Algebra::from_pairs(&[("dz", "dzb")]).unwrap();
        alg.add_weight_coordinate("z", "dz", "dzb").unwrap();
        // θ = dz - e^z dz̄ leaves the pivot 1 - e^{z+z̄}, which is not a single character.
        let theta = Form::symbol(0).sub(&Form::term(g("1"), Weight::holomorphic(0, 1), &[1]));
        assert!(Coframe::new(&alg, &[theta]).is_err());
    }
}

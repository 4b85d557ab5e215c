use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::weight::Weight;
use crate::linalg::GaussianRational;

/// Position of a coordinate symbol in the global order of its [`Algebra`](super::Algebra).
pub type SymbolId = usize;

/// Sorts `symbols` in place and returns the permutation sign, or `None` when
/// a symbol repeats (the wedge vanishes).
pub fn sort_with_sign(symbols: &mut [SymbolId]) -> Option<i8> {
    let mut sign = 1i8;
    // Insertion sort: few symbols, and the swap count gives the sign directly.
    for i in 1..symbols.len() {
        let mut j = i;
        while j > 0 && symbols[j - 1] > symbols[j] {
            symbols.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && symbols[j - 1] == symbols[j] {
            return None;
        }
    }
    Some(sign)
}

/// `e^w` times a wedge of distinct symbols stored in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    symbols: Vec<SymbolId>,
    weight: Weight,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary symbol sequence. Returns the reordering sign
    /// with the monomial, or `None` if a symbol repeats.
    pub fn new(weight: Weight, mut symbols: Vec<SymbolId>) -> Option<(i8, Monomial)> {
        let sign = sort_with_sign(&mut symbols)?;
        Some((sign, Monomial { weight, symbols }))
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.symbols
    }

    pub fn degree(&self) -> usize {
        self.symbols.len()
    }

    /// `self ∧ other` as a sign and a normalized monomial.
    pub fn wedge(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        let mut merged = Vec::with_capacity(self.symbols.len() + other.symbols.len());
        let mut inversions = 0usize;
        let (a, b) = (&self.symbols, &other.symbols);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                merged.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                // b[j] jumps over the remaining a[i..].
                inversions += a.len() - i;
                merged.push(b[j]);
                j += 1;
            } else {
                return None;
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((
            sign,
            Monomial {
                weight: self.weight.add(&other.weight),
                symbols: merged,
            },
        ))
    }
}

/// A finite linear combination of weighted monomials. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, GaussianRational>,
}

fn signed(sign: i8, c: &GaussianRational) -> GaussianRational {
    if sign < 0 {
        -c
    } else {
        c.clone()
    }
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: GaussianRational) -> Self {
        let mut f = Self::zero();
        f.add_term(Monomial::unit(), c);
        f
    }

    pub fn one() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn from_monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    /// `c · e^weight · s₁∧…∧s_k` for symbols in any order.
    pub fn term(c: GaussianRational, weight: Weight, symbols: &[SymbolId]) -> Self {
        match Monomial::new(weight, symbols.to_vec()) {
            Some((sign, m)) => Self::from_monomial(m, signed(sign, &c)),
            None => Self::zero(),
        }
    }

    /// The 1-form given by a single symbol.
    pub fn symbol(s: SymbolId) -> Self {
        Self::term(GaussianRational::one(), Weight::trivial(), &[s])
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// The common degree of all terms, `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Form) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &GaussianRational) -> Form {
        if factor.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Multiplies every term by the character `e^w`.
    pub fn shift(&self, w: &Weight) -> Form {
        let mut out = Form::zero();
        for (m, c) in &self.terms {
            let shifted = Monomial {
                weight: m.weight.add(w),
                symbols: m.symbols.clone(),
            };
            out.add_term(shifted, c.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = m1.wedge(m2) {
                    out.add_term(m, signed(sign, &(c1 * c2)));
                }
            }
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Debug for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c}){:?}{:?}", m.weight, m.symbols))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> GaussianRational {
        GaussianRational::one()
    }

    #[test]
    fn sorting_sign() {
        let mut s = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut s), Some(1));
        assert_eq!(s, vec![0, 1, 2]);
        let mut s = vec![1, 0];
        assert_eq!(sort_with_sign(&mut s), Some(-1));
        assert_eq!(sort_with_sign(&mut [3, 1, 3]), None);
    }

    #[test]
    fn wedge_is_graded_anticommutative() {
        let a = Form::symbol(0);
        let b = Form::symbol(3);
        assert!(a.wedge(&a).is_zero());
        assert_eq!(b.wedge(&a), a.wedge(&b).neg());
        let ab = a.wedge(&b);
        let c = Form::symbol(1);
        assert_eq!(ab.wedge(&c), c.wedge(&ab));
    }

    #[test]
    fn weights_add_under_wedge() {
        let x = Form::term(one(), Weight::holomorphic(0, -1), &[1]);
        let y = Form::term(one(), Weight::holomorphic(0, 1), &[5]);
        let p = x.wedge(&y);
        assert_eq!(p, Form::term(one(), Weight::trivial(), &[1, 5]));
    }
}

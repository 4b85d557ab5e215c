use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::linalg::GaussianRational;

/// A Gaussian integer, the exponent ring of character weights.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: i64) -> Self {
        Self { re, im: 0 }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn to_scalar(self) -> GaussianRational {
        GaussianRational::from_ints(self.re, self.im)
    }

    pub fn from_scalar(x: &GaussianRational) -> Option<Self> {
        x.to_gaussian_integer().map(|(re, im)| Self::new(re, im))
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

/// Character weight `exp(Σⱼ aⱼ·zⱼ + bⱼ·z̄ⱼ)`, stored as one `(aⱼ, bⱼ)` pair per
/// weight coordinate. Trailing zero pairs are trimmed so that equal weights
/// compare equal regardless of how many coordinates were spelled out.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Vec<(GaussInt, GaussInt)>);

impl Weight {
    pub fn trivial() -> Self {
        Self(Vec::new())
    }

    pub fn new(mut pairs: Vec<(GaussInt, GaussInt)>) -> Self {
        while pairs
            .last()
            .is_some_and(|(a, b)| a.is_zero() && b.is_zero())
        {
            pairs.pop();
        }
        Self(pairs)
    }

    /// Builds a weight from the flat list `a₁, b₁, a₂, b₂, …`; a missing
    /// trailing `b` is zero.
    pub fn from_flat(exponents: &[GaussInt]) -> Self {
        let pairs = exponents
            .chunks(2)
            .map(|c| (c[0], c.get(1).copied().unwrap_or(GaussInt::ZERO)))
            .collect();
        Self::new(pairs)
    }

    /// Weight `exp(a·z_coord)` on a single coordinate.
    pub fn holomorphic(coord: usize, a: i64) -> Self {
        let mut pairs = vec![(GaussInt::ZERO, GaussInt::ZERO); coord + 1];
        pairs[coord].0 = GaussInt::real(a);
        Self::new(pairs)
    }

    /// Weight `exp(b·z̄_coord)` on a single coordinate.
    pub fn antiholomorphic(coord: usize, b: i64) -> Self {
        let mut pairs = vec![(GaussInt::ZERO, GaussInt::ZERO); coord + 1];
        pairs[coord].1 = GaussInt::real(b);
        Self::new(pairs)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(GaussInt, GaussInt)] {
        &self.0
    }

    /// The exponents `a₁, b₁, a₂, …` without trailing zeros.
    pub fn flat(&self) -> Vec<GaussInt> {
        let mut out: Vec<GaussInt> = self.0.iter().flat_map(|&(a, b)| [a, b]).collect();
        while out.last().is_some_and(|x| x.is_zero()) {
            out.pop();
        }
        out
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let len = self.0.len().max(other.0.len());
        let zero = (GaussInt::ZERO, GaussInt::ZERO);
        let pairs = (0..len)
            .map(|i| {
                let (a1, b1) = self.0.get(i).copied().unwrap_or(zero);
                let (a2, b2) = other.0.get(i).copied().unwrap_or(zero);
                (a1 + a2, b1 + b2)
            })
            .collect();
        Weight::new(pairs)
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|&(a, b)| (-a, -b)).collect())
    }

    /// Complex conjugate: `exp(a·z + b·z̄)` becomes `exp(b̄·z + ā·z̄)`.
    pub fn conj(&self) -> Weight {
        Weight::new(self.0.iter().map(|&(a, b)| (b.conj(), a.conj())).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: Vec<String> = self.flat().iter().map(ToString::to_string).collect();
        write!(f, "w[{}]", flat.join(","))
    }
}

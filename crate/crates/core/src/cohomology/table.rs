use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::complex::Bidegree;
use crate::linalg::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theory {
    Dolbeault,
    Del,
    BottChern,
    Aeppli,
    DeRham,
    /// Page `E_r` of the Frölicher spectral sequence, `r ≥ 1`.
    Frolicher(usize),
}

impl Theory {
    /// The bigraded theories accepted by `--theory all`, in output order.
    pub const ALL: [Theory; 5] = [
        Theory::Aeppli,
        Theory::BottChern,
        Theory::DeRham,
        Theory::Del,
        Theory::Dolbeault,
    ];
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Dolbeault => f.write_str("dolbeault"),
            Theory::Del => f.write_str("del"),
            Theory::BottChern => f.write_str("bott-chern"),
            Theory::Aeppli => f.write_str("aeppli"),
            Theory::DeRham => f.write_str("de-rham"),
            Theory::Frolicher(r) => write!(f, "frolicher-page-{r}"),
        }
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "dolbeault" => Theory::Dolbeault,
            "del" => Theory::Del,
            "bott-chern" => Theory::BottChern,
            "aeppli" => Theory::Aeppli,
            "de-rham" => Theory::DeRham,
            _ => match s.strip_prefix("frolicher-page-").map(str::parse) {
                Some(Ok(r)) if r >= 1 => Theory::Frolicher(r),
                _ => return Err(format!("unknown theory `{s}`")),
            },
        })
    }
}

/// A cell of a table: a bidegree, or a total degree for de Rham.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Bi(usize, usize),
    Total(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub theory: Theory,
    pub dims: BTreeMap<Degree, usize>,
    pub representatives: Option<BTreeMap<Degree, Vec<Vec<GaussianRational>>>>,
}

impl CohomologyTable {
    pub fn bigraded(theory: Theory, dims: BTreeMap<Bidegree, usize>) -> Self {
        Self {
            theory,
            dims: dims
                .into_iter()
                .map(|((p, q), d)| (Degree::Bi(p, q), d))
                .collect(),
            representatives: None,
        }
    }

    pub fn total(theory: Theory, dims: Vec<usize>) -> Self {
        Self {
            theory,
            dims: dims
                .into_iter()
                .enumerate()
                .map(|(k, d)| (Degree::Total(k), d))
                .collect(),
            representatives: None,
        }
    }

    /// `h^{p,q}`, zero for absent cells.
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.dims.get(&Degree::Bi(p, q)).copied().unwrap_or(0)
    }

    /// `b_k` of a de Rham table, zero for absent cells.
    pub fn betti(&self, k: usize) -> usize {
        self.dims.get(&Degree::Total(k)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} h^{p,q}`.
    pub fn degree_sum(&self, k: usize) -> usize {
        self.dims
            .iter()
            .filter_map(|(deg, d)| match *deg {
                Degree::Bi(p, q) if p + q == k => Some(*d),
                _ => None,
            })
            .sum()
    }

    /// Rows by total degree, each listing `h^{k,0}, h^{k-1,1}, …, h^{0,k}`,
    /// as in the usual layout of dimension tables.
    pub fn rows(&self, n: usize) -> Vec<Vec<usize>> {
        (0..=2 * n)
            .map(|k| {
                (0..=k)
                    .rev()
                    .filter(|&p| p <= n && k - p <= n)
                    .map(|p| self.get(p, k - p))
                    .collect()
            })
            .collect()
    }

    pub fn representatives_at(&self, p: usize, q: usize) -> &[Vec<GaussianRational>] {
        self.representatives
            .as_ref()
            .and_then(|r| r.get(&Degree::Bi(p, q)))
            .map_or(&[], Vec::as_slice)
    }
}

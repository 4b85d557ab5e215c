//! Shared test support: the property suite and a generator of disguised
//! double complexes with known cohomology.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solvcohom::cohomology::{
    aeppli, bott_chern, check_theorem_hypotheses, de_rham, del_cohomology, dolbeault,
    frolicher_pages, hodge_kernels, CohomologyTable, DoubleComplex, HodgeTheory,
};
use solvcohom::linalg::{ExactMatrix, GaussianRational as GR};
use solvcohom::models::{build_from_spec, builtin, Closure, Model};

pub type Table = BTreeMap<(usize, usize), usize>;

fn cells(t: &CohomologyTable, n: usize) -> Table {
    let mut out = Table::new();
    for p in 0..=n {
        for q in 0..=n {
            out.insert((p, q), t.get(p, q));
        }
    }
    out
}

/// What the suite should assume about the model beyond being a double complex.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symmetries {
    /// The span is closed under conjugation.
    pub real: bool,
    /// The span is closed under `∂`, `∂̄` and `∗̄`.
    pub star_closed: bool,
}

/// The checks that hold for every finite double complex, plus the symmetric
/// ones selected by `sym`. Returns a description of the first failure.
pub fn property_suite(c: &DoubleComplex, sym: Symmetries) -> Result<(), String> {
    let n = c.n();
    c.validate().map_err(|e| format!("d-identities: {e}"))?;
    let h = dolbeault(c);
    let hd = del_cohomology(c);
    let bc = bott_chern(c);
    let a = aeppli(c);
    let b = de_rham(c);
    let pages = frolicher_pages(c);

    let mut euler_dims = 0i64;
    let mut euler_betti = 0i64;
    for k in 0..=2 * n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        euler_dims += sign * c.degree_dim(k) as i64;
        euler_betti += sign * b.betti(k) as i64;
        if h.degree_sum(k) < b.betti(k) {
            return Err(format!("Frölicher inequality fails in degree {k}"));
        }
        if bc.degree_sum(k) + a.degree_sum(k) < 2 * b.betti(k) {
            return Err(format!("Bott-Chern/Aeppli inequality fails in degree {k}"));
        }
        let last = pages.last().expect("at least one page");
        if last.degree_sum(k) != b.betti(k) {
            return Err(format!("E_inf does not sum to b_{k}"));
        }
    }
    if euler_dims != euler_betti {
        return Err(format!(
            "Euler characteristic {euler_dims} vs {euler_betti}"
        ));
    }
    if cells(&pages[0], n) != cells(&h, n) {
        return Err("E_1 differs from Dolbeault cohomology".into());
    }
    for w in pages.windows(2) {
        for (p, q) in c.bidegrees() {
            if w[1].get(p, q) > w[0].get(p, q) {
                return Err(format!("page dimension grows at ({p},{q})"));
            }
        }
    }
    for (p, q) in c.bidegrees() {
        let dim = c.dim(p, q);
        for (name, t) in [
            ("dolbeault", &h),
            ("del", &hd),
            ("bott-chern", &bc),
            ("aeppli", &a),
        ] {
            if t.get(p, q) > dim {
                return Err(format!("{name} at ({p},{q}) exceeds the space"));
            }
        }
    }
    let kd = hodge_kernels(c, HodgeTheory::Dolbeault);
    let kbc = hodge_kernels(c, HodgeTheory::BottChern);
    if cells(&kd, n) != cells(&h, n) {
        return Err("harmonic Dolbeault kernels differ from the quotient".into());
    }
    if cells(&kbc, n) != cells(&bc, n) {
        return Err("harmonic Bott-Chern kernels differ from the quotient".into());
    }
    if sym.real {
        for (p, q) in c.bidegrees() {
            if h.get(p, q) != hd.get(q, p) {
                return Err(format!("h_delbar^({p},{q}) != h_del^({q},{p})"));
            }
            if bc.get(p, q) != bc.get(q, p) || a.get(p, q) != a.get(q, p) {
                return Err(format!("conjugation symmetry fails at ({p},{q})"));
            }
        }
    }
    if sym.star_closed {
        for (p, q) in c.bidegrees() {
            if a.get(p, q) != bc.get(n - p, n - q) {
                return Err(format!("h_A^({p},{q}) != h_BC^({},{})", n - p, n - q));
            }
            if h.get(p, q) != h.get(n - p, n - q) {
                return Err(format!("Serre duality fails at ({p},{q})"));
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------ disguised complexes

/// Indecomposable pieces with hand-computed cohomology, placed with their
/// lowest corner at `(p,q)`.
#[derive(Clone, Copy, Debug)]
pub enum Piece {
    Dot,
    Square,
    DelLine,
    DelbarLine,
    /// `x ↦ (∂x, ∂̄x)`, both nonzero, `∂∂̄x = 0`.
    Source,
    /// `∂̄y = ∂z = w`.
    Sink,
}

impl Piece {
    const ALL: [Piece; 6] = [
        Piece::Dot,
        Piece::Square,
        Piece::DelLine,
        Piece::DelbarLine,
        Piece::Source,
        Piece::Sink,
    ];

    /// Offsets of the generators from the corner.
    fn generators(self) -> &'static [(usize, usize)] {
        match self {
            Piece::Dot => &[(0, 0)],
            Piece::Square => &[(0, 0), (1, 0), (0, 1), (1, 1)],
            Piece::DelLine => &[(0, 0), (1, 0)],
            Piece::DelbarLine => &[(0, 0), (0, 1)],
            Piece::Source => &[(0, 0), (1, 0), (0, 1)],
            Piece::Sink => &[(1, 0), (0, 1), (1, 1)],
        }
    }

    /// Arrows between generator indices: `(from, to, is_del, coefficient)`.
    fn arrows(self) -> Vec<(usize, usize, bool, i64)> {
        match self {
            Piece::Dot => vec![],
            Piece::Square => vec![
                (0, 1, true, 1),
                (0, 2, false, 1),
                (2, 3, true, 1),
                (1, 3, false, -1),
            ],
            Piece::DelLine => vec![(0, 1, true, 1)],
            Piece::DelbarLine => vec![(0, 1, false, 1)],
            Piece::Source => vec![(0, 1, true, 1), (0, 2, false, 1)],
            Piece::Sink => vec![(0, 2, false, 1), (1, 2, true, 1)],
        }
    }

    fn width(self) -> usize {
        match self {
            Piece::Dot | Piece::DelbarLine => 0,
            _ => 1,
        }
    }

    fn height(self) -> usize {
        match self {
            Piece::Dot | Piece::DelLine => 0,
            _ => 1,
        }
    }
}

/// Expected dimensions, accumulated piece by piece.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub dolbeault: Table,
    pub del: Table,
    pub bott_chern: Table,
    pub aeppli: Table,
    pub betti: BTreeMap<usize, usize>,
    /// `E_1` and `E_r` for `r ≥ 2` (pages stabilize after `E_2` for these pieces).
    pub e1: Table,
    pub e2: Table,
}

impl Expected {
    fn add(&mut self, piece: Piece, p: usize, q: usize) {
        let at = |t: &mut Table, dp: usize, dq: usize| *t.entry((p + dp, q + dq)).or_default() += 1;
        let k = p + q;
        match piece {
            Piece::Dot => {
                for t in [
                    &mut self.dolbeault,
                    &mut self.del,
                    &mut self.bott_chern,
                    &mut self.aeppli,
                    &mut self.e1,
                    &mut self.e2,
                ] {
                    at(t, 0, 0);
                }
                *self.betti.entry(k).or_default() += 1;
            }
            Piece::Square => {}
            Piece::DelLine => {
                at(&mut self.dolbeault, 0, 0);
                at(&mut self.dolbeault, 1, 0);
                at(&mut self.e1, 0, 0);
                at(&mut self.e1, 1, 0);
                at(&mut self.bott_chern, 1, 0);
                at(&mut self.aeppli, 0, 0);
            }
            Piece::DelbarLine => {
                at(&mut self.del, 0, 0);
                at(&mut self.del, 0, 1);
                at(&mut self.bott_chern, 0, 1);
                at(&mut self.aeppli, 0, 0);
            }
            Piece::Source => {
                at(&mut self.dolbeault, 1, 0);
                at(&mut self.e1, 1, 0);
                at(&mut self.e2, 1, 0);
                at(&mut self.del, 0, 1);
                at(&mut self.bott_chern, 1, 0);
                at(&mut self.bott_chern, 0, 1);
                at(&mut self.aeppli, 0, 0);
                *self.betti.entry(k + 1).or_default() += 1;
            }
            Piece::Sink => {
                at(&mut self.dolbeault, 0, 1);
                at(&mut self.e1, 0, 1);
                at(&mut self.e2, 0, 1);
                at(&mut self.del, 1, 0);
                at(&mut self.bott_chern, 1, 1);
                at(&mut self.aeppli, 1, 0);
                at(&mut self.aeppli, 0, 1);
                *self.betti.entry(k + 1).or_default() += 1;
            }
        }
    }
}

type Dense = Vec<Vec<GR>>;

/// `(source bidegree, index, target bidegree, index, is_del, coefficient)`.
type Arrow = ((usize, usize), usize, (usize, usize), usize, bool, i64);

fn identity(d: usize) -> Dense {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { GR::one() } else { GR::zero() })
                .collect()
        })
        .collect()
}

fn dense_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = GR::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &(row[k].clone() * b[k][j].clone());
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// A random invertible matrix and its inverse, from elementary operations.
fn invertible(rng: &mut ChaCha8Rng, d: usize) -> (Dense, Dense) {
    let mut p = identity(d);
    let mut inv = identity(d);
    if d < 2 {
        return (p, inv);
    }
    let coeffs = [
        GR::from(1),
        GR::from(-1),
        GR::i(),
        GR::ratio(1, 2),
        GR::complex_ratio((1, 1), (-1, 3)),
    ];
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        match rng.gen_range(0..3) {
            0 => {
                let c = coeffs[rng.gen_range(0..coeffs.len())].clone();
                let row_j = p[j].clone();
                for (x, y) in p[i].iter_mut().zip(&row_j) {
                    *x += &(c.clone() * y.clone());
                }
                for row in &mut inv {
                    let v = row[i].clone() * c.clone();
                    row[j] -= &v;
                }
            }
            1 => {
                p.swap(i, j);
                for row in &mut inv {
                    row.swap(i, j);
                }
            }
            _ => {
                let s = [GR::from(2), GR::i(), GR::complex_ratio((1, 2), (1, 2))]
                    [rng.gen_range(0..3)]
                .clone();
                let s_inv = s.inv().expect("nonzero");
                for x in &mut p[i] {
                    *x *= &s;
                }
                for row in &mut inv {
                    row[i] *= &s_inv;
                }
            }
        }
    }
    (p, inv)
}

/// A fuzzed complex in `0..=n` with `pieces` random pieces, the basis of
/// each bidegree mixed by a random invertible matrix, and its expected
/// dimensions.
pub fn disguised_complex(seed: u64, n: usize, pieces: usize) -> (DoubleComplex, Expected) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut expected = Expected::default();
    for _ in 0..pieces {
        let piece = Piece::ALL[rng.gen_range(0..Piece::ALL.len())];
        let p = rng.gen_range(0..=n - piece.width());
        let q = rng.gen_range(0..=n - piece.height());
        let ids: Vec<((usize, usize), usize)> = piece
            .generators()
            .iter()
            .map(|&(dp, dq)| {
                let b = (p + dp, q + dq);
                let slot = dims.entry(b).or_default();
                *slot += 1;
                (b, *slot - 1)
            })
            .collect();
        for (from, to, is_del, c) in piece.arrows() {
            arrows.push((ids[from].0, ids[from].1, ids[to].0, ids[to].1, is_del, c));
        }
        expected.add(piece, p, q);
    }
    let dim = |b: (usize, usize)| dims.get(&b).copied().unwrap_or(0);
    let mut del: BTreeMap<(usize, usize), Dense> = BTreeMap::new();
    let mut delbar: BTreeMap<(usize, usize), Dense> = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let zero = |t: (usize, usize)| vec![vec![GR::zero(); dim((p, q))]; dim(t)];
            del.insert((p, q), zero((p + 1, q)));
            delbar.insert((p, q), zero((p, q + 1)));
        }
    }
    for (src, i, _dst, j, is_del, c) in arrows {
        let maps = if is_del { &mut del } else { &mut delbar };
        maps.get_mut(&src).expect("allocated")[j][i] = GR::from(c);
    }
    let changes: BTreeMap<(usize, usize), (Dense, Dense)> = (0..=n)
        .flat_map(|p| (0..=n).map(move |q| (p, q)))
        .map(|b| (b, invertible(&mut rng, dim(b))))
        .collect();
    let conjugate = |m: &Dense, src: (usize, usize), dst: (usize, usize)| -> ExactMatrix {
        let (rows, cols) = (dim(dst), dim(src));
        if rows == 0 || cols == 0 {
            return ExactMatrix::zeros(rows, cols);
        }
        let left = &changes[&dst].0;
        let right = &changes[&src].1;
        let m = dense_mul(&dense_mul(left, m, rows, cols), right, cols, cols);
        ExactMatrix::from_dense(&m)
    };
    let mut basis = BTreeMap::new();
    let mut del_m = BTreeMap::new();
    let mut delbar_m = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            basis.insert(
                (p, q),
                (0..dim((p, q))).map(|i| format!("e{p}{q}_{i}")).collect(),
            );
            if p < n {
                del_m.insert((p, q), conjugate(&del[&(p, q)], (p, q), (p + 1, q)));
            }
            if q < n {
                delbar_m.insert((p, q), conjugate(&delbar[&(p, q)], (p, q), (p, q + 1)));
            }
        }
    }
    let c = DoubleComplex::new(n, basis, del_m, delbar_m).expect("shapes agree");
    (c, expected)
}

/// Compares every theory of `c` against `e`. Returns the first difference.
pub fn agrees_with(c: &DoubleComplex, e: &Expected) -> Result<(), String> {
    let n = c.n();
    let full = |t: &Table| -> Table {
        let mut out = Table::new();
        for p in 0..=n {
            for q in 0..=n {
                out.insert((p, q), t.get(&(p, q)).copied().unwrap_or(0));
            }
        }
        out
    };
    let pages = frolicher_pages(c);
    let checks = [
        ("dolbeault", cells(&dolbeault(c), n), full(&e.dolbeault)),
        ("del", cells(&del_cohomology(c), n), full(&e.del)),
        ("bott-chern", cells(&bott_chern(c), n), full(&e.bott_chern)),
        ("aeppli", cells(&aeppli(c), n), full(&e.aeppli)),
        ("E_1", cells(&pages[0], n), full(&e.e1)),
    ];
    for (name, got, want) in checks {
        if got != want {
            return Err(format!("{name}: computed {got:?}, expected {want:?}"));
        }
    }
    for page in &pages[1..] {
        if cells(page, n) != full(&e.e2) {
            return Err(format!(
                "{}: computed {:?}, expected {:?}",
                page.theory,
                cells(page, n),
                e.e2
            ));
        }
    }
    let b = de_rham(c);
    for k in 0..=2 * n {
        let want = e.betti.get(&k).copied().unwrap_or(0);
        if b.betti(k) != want {
            return Err(format!("b_{k}: computed {}, expected {want}", b.betti(k)));
        }
    }
    Ok(())
}

// ------------------------------------------------------------- built-ins

/// Whether conjugation maps the span of `model` into itself.
pub fn conjugation_closed(model: &Model) -> bool {
    let alg = model.basis.algebra();
    model
        .basis
        .bidegrees()
        .collect::<Vec<_>>()
        .into_iter()
        .all(|b| {
            model
                .basis
                .raw(b)
                .iter()
                .all(|x| model.basis.coordinates(&alg.conj(x)).is_ok())
        })
}

/// Dolbeault-side checks for a span closed under `∂̄` (and `∗̄`) only:
/// harmonic kernels, Serre duality, and the Frölicher inequality against
/// the Betti numbers of the reference.
pub fn delbar_suite(model: &Model) -> Result<(), String> {
    let c = model.complex();
    let n = c.n();
    let h = dolbeault(c);
    if cells(&hodge_kernels(c, HodgeTheory::Dolbeault), n) != cells(&h, n) {
        return Err("harmonic Dolbeault kernels differ from the quotient".into());
    }
    for (p, q) in c.bidegrees() {
        if h.get(p, q) != h.get(n - p, n - q) {
            return Err(format!("Serre duality fails at ({p},{q})"));
        }
    }
    if let Some(reference) = model.de_rham_complex() {
        let b = de_rham(reference);
        for k in 0..=2 * n {
            if h.degree_sum(k) < b.betti(k) {
                return Err(format!("Frölicher inequality fails in degree {k}"));
            }
        }
    }
    Ok(())
}

/// The property suite on the built-in `name` at its default parameter.
pub fn builtin_suite(name: &str) -> Result<(), String> {
    let spec = builtin(name, None).map_err(|e| e.to_string())?;
    let metric = spec.metric_indices().map_err(|e| e.to_string())?;
    let model = build_from_spec(spec.clone()).map_err(|e| e.to_string())?;
    let hyp = metric.map(|m| check_theorem_hypotheses(&spec.span, &m));
    match model.closure {
        Closure::Double => {
            let sym = Symmetries {
                real: conjugation_closed(&model),
                star_closed: hyp.as_ref().is_some_and(|h| h.bott_chern_setting()),
            };
            property_suite(model.complex(), sym)
        }
        Closure::DelbarOnly => {
            if !hyp.as_ref().is_some_and(|h| h.dolbeault_setting()) {
                return Err("a delbar-only span must satisfy the Dolbeault hypotheses".into());
            }
            model
                .complex()
                .validate()
                .map_err(|e| format!("d-identities: {e}"))?;
            delbar_suite(&model)
        }
    }
}

//! The DGA description language: parser, canonical renderer, and the
//! conversion to a [`GeneratorListSpec`].
//!
//! ```text
//! # comment
//! param t = 1/2
//! coord dz1 type (1,0) conj dzb1
//! coord dzb1 type (0,1) conj dz1
//! weightcoord z1 holo dz1 anti dzb1
//! d dz1 = 0
//! frame phi1 : (1,0) = dz1 - t*dzb1
//! frame phib1 : (0,1) = dzb1 - conj(t)*dz1
//! frame phi2 : (1,0) = w[-1]*dz2
//! complex = exterior(phi1, phi2, phib1) + exterior(phi1, phib1)
//! metric = phi1, phi2
//! expect dolbeault (1,0) = 3
//! expect de-rham (2) = 5
//! ```
//!
//! Coefficients are products of literals, parameter names and `conj(NAME)`.
//! A bare literal has no inner sign (`2`, `1/2`, `3/4i`); write others in
//! parentheses, e.g. `(1/3+1/5i)*dz1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cohomology::{Degree, Theory};
use crate::dga::{Algebra, Form, FormType, FrameElement, FrameSpan, GaussInt, SymbolDecl, Weight};
use crate::linalg::GaussianRational;
use crate::models::{GeneratorListSpec, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("model has no parameter `{0}`")]
    UnknownParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Literal(GaussianRational),
    Param(String),
    ConjParam(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
    /// Exponents `a₁, b₁, a₂, …` of `w[…]`, when written.
    pub weight: Option<Vec<GaussInt>>,
    pub symbols: Vec<String>,
}

/// A form as written; no terms means `0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormExpr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordDecl {
    pub symbol: String,
    pub form_type: FormType,
    pub conj: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCoordDecl {
    pub name: String,
    pub holo: String,
    pub anti: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameDecl {
    pub name: String,
    pub form_type: FormType,
    pub value: FormExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub theory: Theory,
    pub degree: Degree,
    pub dim: usize,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Degree::Bi(p, q) => write!(f, "expect {} ({p},{q}) = {}", self.theory, self.dim),
            Degree::Total(k) => write!(f, "expect {} ({k}) = {}", self.theory, self.dim),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DgaDocument {
    pub params: Vec<(String, GaussianRational)>,
    pub coords: Vec<CoordDecl>,
    pub weight_coords: Vec<WeightCoordDecl>,
    pub differentials: Vec<(String, FormExpr)>,
    pub frames: Vec<FrameDecl>,
    pub complex: Vec<Vec<String>>,
    pub metric: Option<Vec<String>>,
    pub expectations: Vec<Expectation>,
}

// ---------------------------------------------------------------- lexing

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// A cursor over one line, with column tracking for diagnostics.
pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    pub(crate) fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: pos + 1,
            message: message.into(),
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) if !c.is_ascii_graphic() => {
                self.error(format!("lexical error: unexpected character `{c}`"))
            }
            Some(c) => self.error(format!("expected {wanted}, found `{c}`")),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
                    self.pos += 1;
                }
                Ok(self.chars[start..self.pos].iter().collect())
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    /// A run of non-whitespace characters.
    pub(crate) fn word(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| !c.is_whitespace()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected("a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn peek_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let out = self.ident().ok();
        self.pos = save;
        out
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let at = self.pos();
        match self.ident() {
            Ok(w) if w == kw => Ok(()),
            _ => Err(self.error_at(at, format!("expected `{kw}`"))),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub(crate) fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let d = self.digits().ok_or_else(|| self.unexpected("a number"))?;
        d.parse()
            .map_err(|_| self.error_at(at, format!("number `{d}` out of range")))
    }

    /// The raw text up to (not including) the first of `stops` at depth 0,
    /// or to the end of the line.
    fn raw_until(&mut self, stops: &[char]) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| !stops.contains(c)) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        (start, text.trim_end().to_string())
    }

    pub(crate) fn gauss(&mut self, stops: &[char]) -> Result<GaussianRational, ParseError> {
        let (at, text) = self.raw_until(stops);
        if text.is_empty() {
            return Err(self.unexpected("a Gaussian-rational literal"));
        }
        GaussianRational::from_str(&text)
            .map_err(|e| self.error_at(at, format!("malformed Gaussian-rational literal: {e}")))
    }

    /// A literal of the form `a`, `a/b`, `ai` or `a/bi`.
    fn simple_literal(&mut self) -> Result<GaussianRational, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let mut text = self.digits().unwrap_or_default();
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            match self.digits() {
                Some(d) => {
                    text.push('/');
                    text.push_str(&d);
                }
                None => {
                    return Err(
                        self.error("malformed Gaussian-rational literal: missing denominator")
                    )
                }
            }
        }
        if self.chars.get(self.pos) == Some(&'i')
            && !self
                .chars
                .get(self.pos + 1)
                .is_some_and(|&c| is_ident_char(c))
        {
            self.pos += 1;
            text.push('i');
        }
        if self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
            return Err(self.error("malformed Gaussian-rational literal"));
        }
        GaussianRational::from_str(&text)
            .map_err(|e| self.error_at(at, format!("malformed Gaussian-rational literal: {e}")))
    }

    pub(crate) fn form_type(&mut self) -> Result<FormType, ParseError> {
        let at = self.pos();
        self.expect('(')?;
        let p = self.number()?;
        self.expect(',')?;
        let q = self.number()?;
        self.expect(')')?;
        match (p, q) {
            (1, 0) => Ok(FormType::Holomorphic),
            (0, 1) => Ok(FormType::Antiholomorphic),
            _ => Err(self.error_at(at, "a type must be (1,0) or (0,1)")),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }
}

/// Strips a `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses `expect THEORY (p,q) = N`, or `(k)` for de Rham, after `expect`.
pub(crate) fn parse_expectation(cur: &mut Cursor) -> Result<Expectation, ParseError> {
    let at = cur.pos();
    let (_, name) = cur.raw_until(&['(']);
    let theory = Theory::from_str(&name).map_err(|e| cur.error_at(at, e))?;
    cur.expect('(')?;
    let first = cur.number()?;
    let degree = if cur.eat(',') {
        let q = cur.number()?;
        Degree::Bi(first, q)
    } else {
        Degree::Total(first)
    };
    cur.expect(')')?;
    match (theory, degree) {
        (Theory::DeRham, Degree::Bi(..)) => {
            return Err(cur.error_at(at, "de-rham expectations take a total degree `(k)`"))
        }
        (t, Degree::Total(_)) if t != Theory::DeRham => {
            return Err(cur.error_at(at, format!("{t} expectations take a bidegree `(p,q)`")))
        }
        _ => {}
    }
    cur.expect('=')?;
    let dim = cur.number()?;
    cur.finish()?;
    Ok(Expectation {
        theory,
        degree,
        dim,
    })
}

// --------------------------------------------------------------- parsing

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Param,
    Symbol,
    WeightCoord,
    Frame,
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Param => "parameter",
            Kind::Symbol => "coordinate symbol",
            Kind::WeightCoord => "weight coordinate",
            Kind::Frame => "frame element",
        }
    }
}

/// Declared names. Frame elements have a namespace of their own, since
/// they are only referred to by `complex` and `metric`.
#[derive(Default)]
struct Scope {
    names: HashMap<String, Kind>,
    frames: HashMap<String, Kind>,
}

impl Scope {
    fn table(&self, kind: Kind) -> &HashMap<String, Kind> {
        if kind == Kind::Frame {
            &self.frames
        } else {
            &self.names
        }
    }

    fn define(
        &mut self,
        cur: &Cursor,
        at: usize,
        name: &str,
        kind: Kind,
    ) -> Result<(), ParseError> {
        let table = if kind == Kind::Frame {
            &mut self.frames
        } else {
            &mut self.names
        };
        if table.insert(name.to_string(), kind).is_some() {
            return Err(cur.error_at(at, format!("duplicate definition of `{name}`")));
        }
        Ok(())
    }

    fn require(&self, cur: &Cursor, at: usize, name: &str, kind: Kind) -> Result<(), ParseError> {
        match self.table(kind).get(name) {
            Some(&k) if k == kind => Ok(()),
            Some(k) => Err(cur.error_at(
                at,
                format!("`{name}` is a {}, not a {}", k.describe(), kind.describe()),
            )),
            None => Err(cur.error_at(at, format!("unknown identifier `{name}`"))),
        }
    }
}

struct Parser {
    doc: DgaDocument,
    scope: Scope,
    /// Where each coordinate was declared, for pair-completeness errors.
    coord_lines: Vec<(usize, usize)>,
    complex_seen: bool,
}

impl Parser {
    fn form(&self, cur: &mut Cursor) -> Result<FormExpr, ParseError> {
        let save = cur.pos();
        if cur.peek() == Some('0') {
            cur.pos += 1;
            if cur.at_end() {
                return Ok(FormExpr::default());
            }
            cur.pos = save;
        }
        let mut terms = Vec::new();
        let mut negative = cur.eat('-');
        if !negative {
            cur.eat('+');
        }
        loop {
            terms.push(self.term(cur, negative)?);
            if cur.eat('+') {
                negative = false;
            } else if cur.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        cur.finish()?;
        Ok(FormExpr { terms })
    }

    fn term(&self, cur: &mut Cursor, negative: bool) -> Result<Term, ParseError> {
        let mut factors = Vec::new();
        let mut weight = None;
        loop {
            let at = cur.pos();
            match cur.peek() {
                Some('(') => {
                    cur.pos += 1;
                    let v = cur.gauss(&[')'])?;
                    cur.expect(')')?;
                    factors.push(Factor::Literal(v));
                    cur.expect('*')?;
                }
                Some(c) if c.is_ascii_digit() => {
                    factors.push(Factor::Literal(cur.simple_literal()?));
                    cur.expect('*')?;
                }
                Some(c) if is_ident_start(c) => {
                    let name = cur.peek_ident().expect("identifier start");
                    if name == "conj" {
                        cur.ident()?;
                        cur.expect('(')?;
                        let p_at = cur.pos();
                        let p = cur.ident()?;
                        self.scope.require(cur, p_at, &p, Kind::Param)?;
                        cur.expect(')')?;
                        cur.expect('*')?;
                        factors.push(Factor::ConjParam(p));
                    } else if self.scope.names.get(&name) == Some(&Kind::Param) {
                        cur.ident()?;
                        cur.expect('*')?;
                        factors.push(Factor::Param(name));
                    } else if name == "w" && weight.is_none() && {
                        let save = cur.pos;
                        cur.ident()?;
                        let bracket = cur.peek() == Some('[');
                        cur.pos = save;
                        bracket
                    } {
                        cur.ident()?;
                        cur.expect('[')?;
                        weight = Some(self.exponents(cur, at)?);
                        cur.eat('*');
                    } else {
                        break;
                    }
                }
                _ => break,
            }
        }
        let mut symbols: Vec<String> = Vec::new();
        let mut positions = Vec::new();
        loop {
            let at = cur.pos();
            let s = cur
                .ident()
                .map_err(|_| cur.unexpected("a coordinate symbol"))?;
            self.scope.require(cur, at, &s, Kind::Symbol)?;
            if symbols.contains(&s) {
                return Err(cur.error_at(at, format!("repeated symbol in wedge: `{s}`")));
            }
            symbols.push(s);
            positions.push(at);
            if !cur.eat('^') {
                break;
            }
        }
        Ok(Term {
            negative,
            factors,
            weight,
            symbols,
        })
    }

    fn exponents(&self, cur: &mut Cursor, at: usize) -> Result<Vec<GaussInt>, ParseError> {
        let mut out = Vec::new();
        loop {
            let e_at = cur.pos();
            let v = cur.gauss(&[',', ']'])?;
            let g = GaussInt::from_scalar(&v).ok_or_else(|| {
                cur.error_at(
                    e_at,
                    format!("weight exponent `{v}` is not a Gaussian integer"),
                )
            })?;
            out.push(g);
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect(']')?;
        let max = 2 * self.doc.weight_coords.len();
        if out.len() > max {
            return Err(cur.error_at(
                at,
                format!(
                    "{} weight exponents for {} weight coordinates",
                    out.len(),
                    max / 2
                ),
            ));
        }
        Ok(out)
    }

    fn name_list(
        &self,
        cur: &mut Cursor,
        kind: Kind,
        close: Option<char>,
    ) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        loop {
            let at = cur.pos();
            let name = cur.ident()?;
            self.scope.require(cur, at, &name, kind)?;
            if out.contains(&name) {
                return Err(cur.error_at(at, format!("`{name}` listed twice")));
            }
            out.push(name);
            if !cur.eat(',') {
                break;
            }
        }
        if let Some(c) = close {
            cur.expect(c)?;
        }
        Ok(out)
    }

    fn statement(&mut self, cur: &mut Cursor) -> Result<(), ParseError> {
        let at = cur.pos();
        let kw = cur.ident().map_err(|_| cur.error("expected a statement"))?;
        match kw.as_str() {
            "param" => {
                let n_at = cur.pos();
                let name = cur.ident()?;
                cur.expect('=')?;
                let v = cur.gauss(&[])?;
                cur.finish()?;
                self.scope.define(cur, n_at, &name, Kind::Param)?;
                self.doc.params.push((name, v));
            }
            "coord" => {
                let n_at = cur.pos();
                let symbol = cur.ident()?;
                cur.keyword("type")?;
                let form_type = cur.form_type()?;
                cur.keyword("conj")?;
                let conj = cur.ident()?;
                cur.finish()?;
                self.scope.define(cur, n_at, &symbol, Kind::Symbol)?;
                self.coord_lines.push((cur.line, n_at + 1));
                self.doc.coords.push(CoordDecl {
                    symbol,
                    form_type,
                    conj,
                });
            }
            "weightcoord" => {
                let n_at = cur.pos();
                let name = cur.ident()?;
                cur.keyword("holo")?;
                let h_at = cur.pos();
                let holo = cur.ident()?;
                self.scope.require(cur, h_at, &holo, Kind::Symbol)?;
                cur.keyword("anti")?;
                let a_at = cur.pos();
                let anti = cur.ident()?;
                self.scope.require(cur, a_at, &anti, Kind::Symbol)?;
                cur.finish()?;
                self.scope.define(cur, n_at, &name, Kind::WeightCoord)?;
                self.doc
                    .weight_coords
                    .push(WeightCoordDecl { name, holo, anti });
            }
            "d" => {
                let s_at = cur.pos();
                let sym = cur.ident()?;
                self.scope.require(cur, s_at, &sym, Kind::Symbol)?;
                if self.doc.differentials.iter().any(|(s, _)| *s == sym) {
                    return Err(cur.error_at(s_at, format!("duplicate definition of d {sym}")));
                }
                cur.expect('=')?;
                let f = self.form(cur)?;
                self.doc.differentials.push((sym, f));
            }
            "frame" => {
                let n_at = cur.pos();
                let name = cur.ident()?;
                cur.expect(':')?;
                let form_type = cur.form_type()?;
                cur.expect('=')?;
                let value = self.form(cur)?;
                self.scope.define(cur, n_at, &name, Kind::Frame)?;
                self.doc.frames.push(FrameDecl {
                    name,
                    form_type,
                    value,
                });
            }
            "complex" => {
                if self.complex_seen {
                    return Err(cur.error_at(at, "duplicate definition of the complex"));
                }
                cur.expect('=')?;
                let mut sets = Vec::new();
                loop {
                    cur.keyword("exterior")?;
                    cur.expect('(')?;
                    sets.push(self.name_list(cur, Kind::Frame, Some(')'))?);
                    if !cur.eat('+') {
                        break;
                    }
                }
                cur.finish()?;
                self.complex_seen = true;
                self.doc.complex = sets;
            }
            "metric" => {
                if self.doc.metric.is_some() {
                    return Err(cur.error_at(at, "duplicate definition of the metric"));
                }
                cur.expect('=')?;
                let names = self.name_list(cur, Kind::Frame, None)?;
                cur.finish()?;
                self.doc.metric = Some(names);
            }
            "expect" => {
                let e = parse_expectation(cur)?;
                self.doc.expectations.push(e);
            }
            other => return Err(cur.error_at(at, format!("unknown statement `{other}`"))),
        }
        Ok(())
    }

    fn check_pairs(&self) -> Result<(), ParseError> {
        let by_name: HashMap<&str, &CoordDecl> = self
            .doc
            .coords
            .iter()
            .map(|c| (c.symbol.as_str(), c))
            .collect();
        for (c, &(line, col)) in self.doc.coords.iter().zip(&self.coord_lines) {
            let err = |message: String| ParseError { line, col, message };
            let partner = by_name.get(c.conj.as_str()).ok_or_else(|| {
                err(format!(
                    "conjugate `{}` of `{}` is not declared",
                    c.conj, c.symbol
                ))
            })?;
            if partner.conj != c.symbol {
                return Err(err(format!(
                    "conjugation is not an involution: `{}` has conjugate `{}`",
                    partner.symbol, partner.conj
                )));
            }
            if partner.form_type != c.form_type.conj() {
                return Err(err(format!(
                    "`{}` and its conjugate `{}` have the same type",
                    c.symbol, c.conj
                )));
            }
        }
        Ok(())
    }
}

/// Parses a DGA document.
pub fn parse_dga(text: &str) -> Result<DgaDocument, ParseError> {
    let mut parser = Parser {
        doc: DgaDocument::default(),
        scope: Scope::default(),
        coord_lines: Vec::new(),
        complex_seen: false,
    };
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        last = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, i + 1);
        parser.statement(&mut cur)?;
    }
    parser.check_pairs()?;
    if !parser.complex_seen {
        return Err(ParseError {
            line: last.max(1),
            col: 1,
            message: "no complex declaration".to_string(),
        });
    }
    Ok(parser.doc)
}

// ------------------------------------------------------------- rendering

fn render_literal(v: &GaussianRational) -> String {
    let s = v.to_string();
    let bare = s.starts_with(|c: char| c.is_ascii_digit()) && !s.contains(['+', '-']);
    if bare {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            for factor in &t.factors {
                match factor {
                    Factor::Literal(v) => write!(f, "{}*", render_literal(v))?,
                    Factor::Param(p) => write!(f, "{p}*")?,
                    Factor::ConjParam(p) => write!(f, "conj({p})*")?,
                }
            }
            if let Some(w) = &t.weight {
                let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "w[{}]*", parts.join(","))?;
            }
            f.write_str(&t.symbols.join("^"))?;
        }
        Ok(())
    }
}

impl fmt::Display for DgaDocument {
    /// The canonical rendering; [`parse_dga`] reads it back to an equal document.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in &self.params {
            writeln!(f, "param {name} = {v}")?;
        }
        for c in &self.coords {
            writeln!(f, "coord {} type {} conj {}", c.symbol, c.form_type, c.conj)?;
        }
        for w in &self.weight_coords {
            writeln!(f, "weightcoord {} holo {} anti {}", w.name, w.holo, w.anti)?;
        }
        for (s, form) in &self.differentials {
            writeln!(f, "d {s} = {form}")?;
        }
        for fr in &self.frames {
            writeln!(f, "frame {} : {} = {}", fr.name, fr.form_type, fr.value)?;
        }
        let sets: Vec<String> = self
            .complex
            .iter()
            .map(|s| format!("exterior({})", s.join(", ")))
            .collect();
        writeln!(f, "complex = {}", sets.join(" + "))?;
        if let Some(m) = &self.metric {
            writeln!(f, "metric = {}", m.join(", "))?;
        }
        for e in &self.expectations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

// ------------------------------------------------------------ evaluation

impl DgaDocument {
    pub fn param(&self, name: &str) -> Option<&GaussianRational> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// The generator list of the document, with parameters replaced by
    /// `overrides` where given.
    pub fn to_spec(
        &self,
        name: &str,
        overrides: &BTreeMap<String, GaussianRational>,
    ) -> Result<GeneratorListSpec, DocumentError> {
        if let Some(k) = overrides.keys().find(|k| self.param(k).is_none()) {
            return Err(DocumentError::UnknownParameter(k.clone()));
        }
        let params: BTreeMap<String, GaussianRational> = self
            .params
            .iter()
            .map(|(n, v)| (n.clone(), overrides.get(n).unwrap_or(v).clone()))
            .collect();
        let decls: Vec<SymbolDecl> = self
            .coords
            .iter()
            .map(|c| SymbolDecl::new(&c.symbol, c.form_type, &c.conj))
            .collect();
        let mut alg = Algebra::new(&decls).map_err(ModelError::from)?;
        for w in &self.weight_coords {
            alg.add_weight_coordinate(&w.name, &w.holo, &w.anti)
                .map_err(ModelError::from)?;
        }
        let eval = |alg: &Algebra, f: &FormExpr| -> Form {
            let mut out = Form::zero();
            for t in &f.terms {
                let mut c = GaussianRational::one();
                for factor in &t.factors {
                    c *= &match factor {
                        Factor::Literal(v) => v.clone(),
                        Factor::Param(p) => params[p].clone(),
                        Factor::ConjParam(p) => params[p].conj(),
                    };
                }
                if t.negative {
                    c = -c;
                }
                let w = t
                    .weight
                    .as_deref()
                    .map(Weight::from_flat)
                    .unwrap_or_default();
                let ids: Vec<_> = t
                    .symbols
                    .iter()
                    .map(|s| alg.id(s).expect("symbols checked by the parser"))
                    .collect();
                out.add_assign(&Form::term(c, w, &ids));
            }
            out
        };
        let given: Vec<_> = self
            .differentials
            .iter()
            .map(|(s, f)| (alg.id(s).expect("checked"), eval(&alg, f)))
            .collect();
        alg.set_differentials(&given).map_err(ModelError::from)?;
        let elements: Vec<FrameElement> = self
            .frames
            .iter()
            .map(|fr| FrameElement::new(&fr.name, fr.form_type, eval(&alg, &fr.value)))
            .collect();
        let index = |n: &String| {
            self.frames
                .iter()
                .position(|f| f.name == *n)
                .expect("frame names checked by the parser")
        };
        let sets = self
            .complex
            .iter()
            .map(|s| s.iter().map(index).collect())
            .collect();
        let mut spec = GeneratorListSpec::new(name, FrameSpan::new(alg, elements, sets));
        spec.params = params;
        if let Some(m) = &self.metric {
            let names: Vec<&str> = m.iter().map(String::as_str).collect();
            spec = spec.with_metric(&names);
        }
        Ok(spec)
    }

    /// A document describing `spec` with evaluated coefficients.
    pub fn from_spec(spec: &GeneratorListSpec) -> Self {
        let alg = &spec.span.algebra;
        let expr = |f: &Form| FormExpr {
            terms: f
                .terms()
                .map(|(m, c)| {
                    let negative = c.im().is_zero() && c.re().is_negative()
                        || c.re().is_zero() && c.im().is_negative();
                    let shown = if negative { -c } else { c.clone() };
                    Term {
                        negative,
                        factors: if shown.is_one() {
                            Vec::new()
                        } else {
                            vec![Factor::Literal(shown)]
                        },
                        weight: (!m.weight().is_trivial()).then(|| m.weight().flat()),
                        symbols: m
                            .symbols()
                            .iter()
                            .map(|&s| alg.name(s).to_string())
                            .collect(),
                    }
                })
                .collect(),
        };
        let symbols = alg.symbols();
        DgaDocument {
            params: spec
                .params
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            coords: symbols
                .iter()
                .map(|s| CoordDecl {
                    symbol: s.name.clone(),
                    form_type: s.form_type,
                    conj: symbols[s.conjugate].name.clone(),
                })
                .collect(),
            weight_coords: alg
                .weight_coordinates()
                .iter()
                .map(|w| WeightCoordDecl {
                    name: w.name.clone(),
                    holo: alg.name(w.holomorphic).to_string(),
                    anti: alg.name(w.antiholomorphic).to_string(),
                })
                .collect(),
            differentials: symbols
                .iter()
                .filter(|s| s.form_type == FormType::Holomorphic && !s.differential.is_zero())
                .map(|s| (s.name.clone(), expr(&s.differential)))
                .collect(),
            frames: spec
                .span
                .elements
                .iter()
                .map(|e| FrameDecl {
                    name: e.name.clone(),
                    form_type: e.form_type,
                    value: expr(&e.value),
                })
                .collect(),
            complex: spec
                .span
                .sets
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&i| spec.span.elements[i].name.clone())
                        .collect()
                })
                .collect(),
            metric: spec.metric.clone(),
            expectations: Vec::new(),
        }
    }
}

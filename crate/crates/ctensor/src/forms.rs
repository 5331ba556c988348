//! Conjugate-polynomial algebra: canonical monomial keys, a text
//! parser/printer, evaluation, classification, and the coefficient
//! pairing test for real-valuedness.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{CScalar, Real};

/// One conjugate monomial: the sorted variable indices carrying a
/// conjugate bar and the sorted plain ones. Indices are 1-based.
///
/// The derived ordering (degree, conjugate group, plain group) is the
/// canonical term order used by the printer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialKey {
    pub conj_indices: Vec<usize>,
    pub plain_indices: Vec<usize>,
}

impl MonomialKey {
    pub fn new(mut conj: Vec<usize>, mut plain: Vec<usize>) -> Self {
        conj.sort_unstable();
        plain.sort_unstable();
        Self { conj_indices: conj, plain_indices: plain }
    }

    pub fn degree(&self) -> usize {
        self.conj_indices.len() + self.plain_indices.len()
    }

    /// Swaps the conjugate and plain groups (an involution).
    pub fn conjugate_key(&self) -> Self {
        Self { conj_indices: self.plain_indices.clone(), plain_indices: self.conj_indices.clone() }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conj_indices == self.plain_indices
    }

    fn max_index(&self) -> usize {
        self.conj_indices
            .iter()
            .chain(&self.plain_indices)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

impl Ord for MonomialKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.conj_indices.len().cmp(&self.conj_indices.len()))
            .then_with(|| self.conj_indices.cmp(&other.conj_indices))
            .then_with(|| self.plain_indices.cmp(&other.plain_indices))
    }
}

impl PartialOrd for MonomialKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The tightest structural class of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormClass {
    /// Every monomial has exactly d conjugated and d plain variables.
    SymmetricConjugateForm { d: usize },
    /// Homogeneous of total degree d with arbitrary conjugate/plain split.
    GeneralConjugateForm { d: usize },
    /// Homogeneous of degree d with no conjugated variables.
    ComplexForm { d: usize },
    /// Mixed degrees.
    General,
}

/// Polynomial in x in C^n and its entrywise conjugates, stored as a
/// canonical term map (no explicit zero coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePolynomial<R: Real> {
    n: usize,
    terms: BTreeMap<MonomialKey, CScalar<R>>,
}

/// One violated coefficient pair from the real-valuedness test.
#[derive(Debug, Clone)]
pub struct RealnessWitness<R: Real> {
    pub key: MonomialKey,
    pub partner: MonomialKey,
    pub coeff: CScalar<R>,
    pub partner_coeff: CScalar<R>,
    pub violation: R,
}

/// Result of [`ConjugatePolynomial::check_real_valued`].
#[derive(Debug, Clone)]
pub enum RealnessVerdict<R: Real> {
    RealValued,
    /// Violating pairs, sorted by violation magnitude, capped at 20.
    NotRealValued(Vec<RealnessWitness<R>>),
}

impl<R: Real> RealnessVerdict<R> {
    pub fn is_real_valued(&self) -> bool {
        matches!(self, RealnessVerdict::RealValued)
    }
}

impl<R: Real> ConjugatePolynomial<R> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MonomialKey, CScalar<R>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Widens the variable count (needed when combining polynomials
    /// whose highest-used indices differ).
    pub fn with_n(mut self, n: usize) -> Result<Self> {
        let used = self.terms.keys().map(|k| k.max_index()).max().unwrap_or(0);
        if n < used {
            return Err(Error::Argument(format!(
                "n = {n} smaller than highest used variable index {used}"
            )));
        }
        self.n = n;
        Ok(self)
    }

    /// Adds `coeff` to the key's coefficient, merging and dropping zeros.
    pub fn add_term(&mut self, key: MonomialKey, coeff: CScalar<R>) {
        if key.max_index() > self.n {
            self.n = key.max_index();
        }
        let entry = self.terms.entry(key.clone()).or_insert(Complex::new(R::zero(), R::zero()));
        *entry = *entry + coeff;
        if entry.re == R::zero() && entry.im == R::zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &MonomialKey) -> CScalar<R> {
        self.terms.get(key).copied().unwrap_or(Complex::new(R::zero(), R::zero()))
    }

    pub fn scaled(&self, factor: CScalar<R>) -> Self {
        let mut out = Self::zero(self.n);
        for (k, &c) in &self.terms {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.n = self.n.max(other.n);
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    /// Product; keys concatenate groupwise.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n.max(other.n));
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let mut conj = ka.conj_indices.clone();
                conj.extend(&kb.conj_indices);
                let mut plain = ka.plain_indices.clone();
                plain.extend(&kb.plain_indices);
                out.add_term(MonomialKey::new(conj, plain), ca * cb);
            }
        }
        out
    }

    /// Conjugate polynomial: conjugates every coefficient and swaps every
    /// key, so that eval(conj p, x) = conj(eval(p, x)).
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (k, &c) in &self.terms {
            out.add_term(k.conjugate_key(), c.conj());
        }
        out
    }

    pub fn eval(&self, x: &[CScalar<R>]) -> Result<CScalar<R>> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!(
                "point has length {}, polynomial has {} variables",
                x.len(),
                self.n
            )));
        }
        let mut total = Complex::new(R::zero(), R::zero());
        for (k, &c) in &self.terms {
            let mut v = c;
            for &i in &k.conj_indices {
                v = v * x[i - 1].conj();
            }
            for &j in &k.plain_indices {
                v = v * x[j - 1];
            }
            total = total + v;
        }
        Ok(total)
    }

    /// Coefficient pairing test: real-valued iff every monomial's
    /// coefficient is the conjugate of its conjugate monomial's.
    pub fn check_real_valued(&self, tau: R) -> RealnessVerdict<R> {
        let mut witnesses: Vec<RealnessWitness<R>> = Vec::new();
        let mut keys: Vec<MonomialKey> = self.terms.keys().cloned().collect();
        for k in self.terms.keys() {
            let ck = k.conjugate_key();
            if !self.terms.contains_key(&ck) {
                keys.push(ck);
            }
        }
        keys.sort();
        keys.dedup();
        for k in keys {
            let ck = k.conjugate_key();
            if ck < k {
                continue; // pair already visited
            }
            let a = self.coeff(&k);
            let b = self.coeff(&ck);
            let violation = (a - b.conj()).norm();
            if violation > tau {
                witnesses.push(RealnessWitness {
                    key: k,
                    partner: ck,
                    coeff: a,
                    partner_coeff: b,
                    violation,
                });
            }
        }
        if witnesses.is_empty() {
            RealnessVerdict::RealValued
        } else {
            witnesses.sort_by(|a, b| b.violation.partial_cmp(&a.violation).unwrap());
            witnesses.truncate(20);
            RealnessVerdict::NotRealValued(witnesses)
        }
    }

    pub fn classify_form(&self) -> FormClass {
        if self.terms.is_empty() {
            return FormClass::SymmetricConjugateForm { d: 0 };
        }
        let mut keys = self.terms.keys();
        let first = keys.next().unwrap();
        let deg = first.degree();
        let homogeneous = self.terms.keys().all(|k| k.degree() == deg);
        if !homogeneous {
            return FormClass::General;
        }
        if deg % 2 == 0
            && self
                .terms
                .keys()
                .all(|k| k.conj_indices.len() == deg / 2 && k.plain_indices.len() == deg / 2)
        {
            return FormClass::SymmetricConjugateForm { d: deg / 2 };
        }
        if self.terms.keys().all(|k| k.conj_indices.is_empty()) {
            return FormClass::ComplexForm { d: deg };
        }
        FormClass::GeneralConjugateForm { d: deg }
    }
}

// ---------------------------------------------------------------------
// printing

fn fmt_real<R: Real>(x: R) -> String {
    format!("{x}")
}

fn fmt_complex_paren<R: Real>(c: CScalar<R>) -> String {
    let mut s = String::from("(");
    s.push_str(&fmt_real(c.re));
    if c.im >= R::zero() {
        s.push('+');
        s.push_str(&fmt_real(c.im));
    } else {
        s.push('-');
        s.push_str(&fmt_real(-c.im));
    }
    s.push_str("i)");
    s
}

fn fmt_monomial(key: &MonomialKey) -> String {
    let mut factors: Vec<String> = Vec::new();
    let mut emit = |indices: &[usize], prefix: &str| {
        let mut i = 0;
        while i < indices.len() {
            let var = indices[i];
            let mut count = 1;
            while i + count < indices.len() && indices[i + count] == var {
                count += 1;
            }
            if count == 1 {
                factors.push(format!("{prefix}x{var}"));
            } else {
                factors.push(format!("{prefix}x{var}^{count}"));
            }
            i += count;
        }
    };
    emit(&key.conj_indices, "~");
    emit(&key.plain_indices, "");
    factors.join("*")
}

/// Canonical text form; [`parse_poly`] inverts it exactly on the term map.
pub fn print_poly<R: Real>(p: &ConjugatePolynomial<R>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (pos, (key, &coeff)) in p.terms().iter().enumerate() {
        let monomial = fmt_monomial(key);
        // (negative-sign flag, coefficient body or empty for unit)
        let (neg, body) = if coeff.im == R::zero() {
            let mag = coeff.re.abs();
            let body = if mag == R::one() && !monomial.is_empty() {
                String::new()
            } else {
                fmt_real(mag)
            };
            (coeff.re < R::zero(), body)
        } else if coeff.re == R::zero() && coeff.im.abs() == R::one() {
            (coeff.im < R::zero(), "i".to_string())
        } else {
            (false, fmt_complex_paren(coeff))
        };
        if pos == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        match (body.is_empty(), monomial.is_empty()) {
            (true, _) => write!(out, "{monomial}").unwrap(),
            (false, true) => write!(out, "{body}").unwrap(),
            (false, false) => write!(out, "{body}*{monomial}").unwrap(),
        }
    }
    out
}

// ---------------------------------------------------------------------
// parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Imag,       // standalone 'i'
    Var(usize), // x<k>
    ConjVar(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn lex_uint(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn lex_number(&mut self) -> Result<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.bump();
        }
        if self.peek() == Some(b'.') {
            self.bump();
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.bump();
            }
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            self.bump();
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.bump();
            }
            if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                return Err(self.err("malformed exponent"));
            }
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.bump();
            }
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("malformed number"))
    }

    /// Tokens paired with (line, col) of their first character.
    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let (line, col) = (self.line, self.col);
            let Some(b) = self.peek() else { break };
            let tok = match b {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'i' => {
                    self.bump();
                    Tok::Imag
                }
                b'~' => {
                    self.bump();
                    if self.peek() != Some(b'x') {
                        return Err(self.err("expected 'x' after '~'"));
                    }
                    self.bump();
                    let k = self.lex_uint()?;
                    if k < 1 {
                        return Err(Error::Parse {
                            line,
                            col,
                            msg: "variable index must be >= 1".into(),
                        });
                    }
                    Tok::ConjVar(k)
                }
                b'x' => {
                    self.bump();
                    let k = self.lex_uint()?;
                    if k < 1 {
                        return Err(Error::Parse {
                            line,
                            col,
                            msg: "variable index must be >= 1".into(),
                        });
                    }
                    Tok::Var(k)
                }
                b if b.is_ascii_digit() || b == b'.' => Tok::Number(self.lex_number()?),
                other => {
                    return Err(self.err(format!("unexpected character '{}'", other as char)))
                }
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser<R: Real> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    _marker: std::marker::PhantomData<R>,
}

/// Value of one factor: a scalar times a monomial.
struct Factor<R: Real> {
    coeff: CScalar<R>,
    conj: Vec<usize>,
    plain: Vec<usize>,
}

impl<R: Real> Parser<R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1));
        Error::Parse { line, col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(format!("expected {what}")))
        }
    }

    fn parse_poly(&mut self) -> Result<ConjugatePolynomial<R>> {
        let mut p = ConjugatePolynomial::zero(0);
        // optional leading sign (the printer folds '-' into the first term)
        let mut sign = R::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -R::one();
            }
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let f = self.parse_term()?;
            p.add_term(
                MonomialKey::new(f.conj, f.plain),
                f.coeff * Complex::new(sign, R::zero()),
            );
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = R::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -R::one();
                }
                None => break,
                _ => return Err(self.err_here("expected '+', '-' or end of input")),
            }
        }
        Ok(p)
    }

    fn parse_term(&mut self) -> Result<Factor<R>> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc.coeff = acc.coeff * f.coeff;
            acc.conj.extend(f.conj);
            acc.plain.extend(f.plain);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Factor<R>> {
        let mut base = self.parse_atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.bump() {
                Some(Tok::Number(x)) if x.fract() == 0.0 && x >= 0.0 => x as usize,
                _ => return Err(self.err_here("expected a nonnegative integer exponent")),
            };
            let mut powered = Factor {
                coeff: Complex::new(R::one(), R::zero()),
                conj: Vec::new(),
                plain: Vec::new(),
            };
            for _ in 0..e {
                powered.coeff = powered.coeff * base.coeff;
                powered.conj.extend(base.conj.iter().copied());
                powered.plain.extend(base.plain.iter().copied());
            }
            base = powered;
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Factor<R>> {
        let scalar = |c: CScalar<R>| Factor { coeff: c, conj: Vec::new(), plain: Vec::new() };
        match self.bump() {
            Some(Tok::Number(x)) => Ok(scalar(Complex::new(R::of(x), R::zero()))),
            Some(Tok::Imag) => Ok(scalar(Complex::new(R::zero(), R::one()))),
            Some(Tok::Var(k)) => Ok(Factor {
                coeff: Complex::new(R::one(), R::zero()),
                conj: Vec::new(),
                plain: vec![k],
            }),
            Some(Tok::ConjVar(k)) => Ok(Factor {
                coeff: Complex::new(R::one(), R::zero()),
                conj: vec![k],
                plain: Vec::new(),
            }),
            Some(Tok::LParen) => {
                let c = self.parse_complex_literal()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(scalar(c))
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err_here("expected a number, 'i', a variable, or '('"))
            }
        }
    }

    /// Inside parentheses: real (('+'|'-') real? 'i')?
    fn parse_complex_literal(&mut self) -> Result<CScalar<R>> {
        let mut sign = R::one();
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -R::one();
        }
        let re = match self.bump() {
            Some(Tok::Number(x)) => R::of(x) * sign,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.err_here("expected a real number"));
            }
        };
        let im_sign = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                R::one()
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                -R::one()
            }
            _ => return Ok(Complex::new(re, R::zero())),
        };
        let im_mag = match self.peek() {
            Some(&Tok::Number(x)) => {
                self.pos += 1;
                R::of(x)
            }
            _ => R::one(),
        };
        self.expect(Tok::Imag, "'i'")?;
        Ok(Complex::new(re, im_sign * im_mag))
    }
}

/// Parses the polynomial grammar (see crate docs / CLI help). Like
/// monomials merge; exact zero terms are dropped.
pub fn parse_poly<R: Real>(text: &str) -> Result<ConjugatePolynomial<R>> {
    let toks = Lexer::new(text).tokens()?;
    if toks.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "empty input".into() });
    }
    let mut parser = Parser::<R> { toks, pos: 0, _marker: std::marker::PhantomData };
    parser.parse_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type P = ConjugatePolynomial<f64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn quartic_example() -> P {
        parse_poly("(1-1i)*~x1^2*x1^2 + 4*~x1*~x2*x1*x2 + 6*~x1*~x2*x2^2").unwrap()
    }

    pub(crate) fn quadratic_example() -> P {
        parse_poly("i*~x1^2 + 2*~x1*x1 + 4*~x2*x1 + 3*x2^2").unwrap()
    }

    #[test]
    fn parse_quartic_example_terms() {
        let p = quartic_example();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.n(), 2);
        assert_eq!(p.coeff(&MonomialKey::new(vec![1, 1], vec![1, 1])), c(1.0, -1.0));
        assert_eq!(p.coeff(&MonomialKey::new(vec![1, 2], vec![1, 2])), c(4.0, 0.0));
        assert_eq!(p.coeff(&MonomialKey::new(vec![1, 2], vec![2, 2])), c(6.0, 0.0));
    }

    #[test]
    fn parse_quadratic_example_terms() {
        let p = quadratic_example();
        assert_eq!(p.terms().len(), 4);
        assert_eq!(p.coeff(&MonomialKey::new(vec![1, 1], vec![])), c(0.0, 1.0));
        assert_eq!(p.coeff(&MonomialKey::new(vec![1], vec![1])), c(2.0, 0.0));
        assert_eq!(p.coeff(&MonomialKey::new(vec![2], vec![1])), c(4.0, 0.0));
        assert_eq!(p.coeff(&MonomialKey::new(vec![], vec![2, 2])), c(3.0, 0.0));
    }

    #[test]
    fn cancellation_yields_zero() {
        let p: P = parse_poly("x1 - x1").unwrap();
        assert!(p.is_zero());
        assert_eq!(print_poly(&p), "0");
    }

    #[test]
    fn print_examples() {
        assert_eq!(
            print_poly(&quartic_example()),
            "(1-1i)*~x1^2*x1^2 + 4*~x1*~x2*x1*x2 + 6*~x1*~x2*x2^2"
        );
        assert_eq!(print_poly(&quadratic_example()), "i*~x1^2 + 2*~x1*x1 + 4*~x2*x1 + 3*x2^2");
        let p: P = parse_poly("x1").unwrap();
        assert_eq!(print_poly(&p), "x1");
        let p: P = parse_poly("-3*x1 + x2").unwrap();
        assert_eq!(print_poly(&p), "-3*x1 + x2");
        let p: P = parse_poly("0 - i*x1").unwrap();
        assert_eq!(print_poly(&p), "-i*x1");
    }

    #[test]
    fn parse_print_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let mut p = P::zero(3);
            let nterms = rng.gen_range(0..6);
            for _ in 0..nterms {
                let dc = rng.gen_range(0..3);
                let dp = rng.gen_range(0..3);
                let conj: Vec<usize> = (0..dc).map(|_| rng.gen_range(1..4)).collect();
                let plain: Vec<usize> = (0..dp).map(|_| rng.gen_range(1..4)).collect();
                p.add_term(
                    MonomialKey::new(conj, plain),
                    crate::scalar::complex_normal(&mut rng),
                );
            }
            let text = print_poly(&p);
            let q: P = parse_poly(&text).unwrap();
            assert_eq!(p.terms(), q.terms(), "round-trip failed for {text}");
        }
    }

    #[test]
    fn eval_squared_modulus() {
        let p: P = parse_poly("~x1*x1").unwrap();
        let v = p.eval(&[c(3.0, 4.0)]).unwrap();
        assert!((v - c(25.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_quadratic_example_at_e1() {
        let p = quadratic_example();
        let v = p.eval(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((v - c(2.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_at_zero_gives_constant_term() {
        let p: P = parse_poly("5 + x1 + ~x2*x2").unwrap().with_n(2).unwrap();
        let v = p.eval(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((v - c(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn conjugate_key_involution() {
        let k = MonomialKey::new(vec![1, 1], vec![2, 2]);
        let ck = k.conjugate_key();
        assert_eq!(ck, MonomialKey::new(vec![2, 2], vec![1, 1]));
        assert_eq!(ck.conjugate_key(), k);
        let s = MonomialKey::new(vec![1], vec![1]);
        assert_eq!(s.conjugate_key(), s);
    }

    #[test]
    fn realness_hermitian_quadratic() {
        let p: P = parse_poly("~x1*x1 + (1+2i)*~x1*x2 + (1-2i)*~x2*x1").unwrap();
        assert!(p.check_real_valued(1e-12).is_real_valued());
    }

    #[test]
    fn realness_pure_complex_linear_fails() {
        let p: P = parse_poly("x1").unwrap();
        match p.check_real_valued(1e-12) {
            RealnessVerdict::NotRealValued(ws) => {
                assert_eq!(ws.len(), 1);
                let w = &ws[0];
                let (lo, hi) = if w.key < w.partner {
                    (&w.key, &w.partner)
                } else {
                    (&w.partner, &w.key)
                };
                assert_eq!(*lo, MonomialKey::new(vec![1], vec![]));
                assert_eq!(*hi, MonomialKey::new(vec![], vec![1]));
            }
            _ => panic!("expected violation"),
        }
    }

    #[test]
    fn realness_imaginary_self_conjugate_fails() {
        let p: P = parse_poly("i*~x1*x1").unwrap();
        assert!(!p.check_real_valued(1e-12).is_real_valued());
    }

    #[test]
    fn classification() {
        assert_eq!(quartic_example().classify_form(), FormClass::SymmetricConjugateForm { d: 2 });
        assert_eq!(quadratic_example().classify_form(), FormClass::GeneralConjugateForm { d: 2 });
        let p: P = parse_poly("x1 + ~x1*x1").unwrap();
        assert_eq!(p.classify_form(), FormClass::General);
        let p: P = parse_poly("x1^3 + x1*x2^2").unwrap();
        assert_eq!(p.classify_form(), FormClass::ComplexForm { d: 3 });
    }

    #[test]
    fn sum_with_conjugate_is_real_valued() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let mut p = P::zero(2);
            for _ in 0..4 {
                let conj: Vec<usize> =
                    (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..3)).collect();
                let plain: Vec<usize> =
                    (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..3)).collect();
                p.add_term(MonomialKey::new(conj, plain), crate::scalar::complex_normal(&mut rng));
            }
            let sym = p.add(&p.conjugate());
            for _ in 0..5 {
                let x: Vec<Complex64> =
                    (0..2).map(|_| crate::scalar::complex_normal(&mut rng)).collect();
                let v = sym.eval(&x).unwrap();
                assert!(v.im.abs() < 1e-12 * (1.0 + v.norm()));
            }
            assert!(sym.check_real_valued(1e-12).is_real_valued());
        }
    }

    #[test]
    fn mul_expands_products() {
        let a: P = parse_poly("~x1 + x2").unwrap();
        let b: P = parse_poly("x1 - ~x2").unwrap();
        let ab = a.mul(&b);
        let expected: P = parse_poly("~x1*x1 - ~x1*~x2 + x1*x2 - ~x2*x2").unwrap();
        assert_eq!(ab.terms(), expected.terms());
    }

    #[test]
    fn parse_error_positions() {
        match parse_poly::<f64>("x1 + @") {
            Err(Error::Parse { line: 1, col: 6, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(parse_poly::<f64>("x0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<f64>(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly::<f64>("x1 +"), Err(Error::Parse { .. })));
    }
}

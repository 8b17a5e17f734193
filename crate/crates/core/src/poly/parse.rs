//! Recursive-descent parser for polynomial expressions in `z`, `E` and
//! optional named parameters.
//!
//! Grammar (whitespace insignificant, no implicit multiplication):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom (('**' | '^') exponent)?
//! exponent:= ('+' | '-')? integer | '(' ('+' | '-')? integer ')'
//! atom    := number | number ('i' | 'j') | 'i' | 'j' | 'I' | 'z' | 'E'
//!          | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by monomials in `z` with a constant
//! coefficient. Negative exponents are only allowed on such monomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;

use super::bilaurent::BiLaurent;
use super::PolyError;

/// A monomial in `z`, `E` and named parameters (parameter list sorted, no zero powers).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamMonomial {
    pub z: i32,
    pub e: u32,
    pub params: Vec<(String, u32)>,
}

impl ParamMonomial {
    fn unit() -> Self {
        Self { z: 0, e: 0, params: Vec::new() }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut params: BTreeMap<String, u32> = self.params.iter().cloned().collect();
        for (name, k) in &other.params {
            *params.entry(name.clone()).or_insert(0) += k;
        }
        Self { z: self.z + other.z, e: self.e + other.e, params: params.into_iter().collect() }
    }
}

/// Polynomial whose coefficients may involve named parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Complex64>,
}

impl ParamPoly {
    fn constant(c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            terms.insert(ParamMonomial::unit(), c);
        }
        Self { terms }
    }

    fn variable(z: i32, e: u32, param: Option<&str>) -> Self {
        let mono = ParamMonomial { z, e, params: param.map(|p| vec![(p.to_string(), 1)]).unwrap_or_default() };
        let mut terms = BTreeMap::new();
        terms.insert(mono, Complex64::new(1.0, 0.0));
        Self { terms }
    }

    fn add_term(&mut self, m: ParamMonomial, c: Complex64) {
        let entry = self.terms.entry(m.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    fn add(&self, rhs: &Self, sign: f64) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c * sign);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Inverse of a single constant-coefficient `z` monomial, if this is one.
    fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if m.e != 0 || !m.params.is_empty() {
            return None;
        }
        let mut terms = BTreeMap::new();
        terms.insert(ParamMonomial { z: -m.z, e: 0, params: Vec::new() }, Complex64::new(1.0, 0.0) / c);
        Some(Self { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Names of all parameters referenced.
    pub fn params(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.params.iter().map(|(n, _)| n.clone())).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Complex64)> {
        self.terms.iter()
    }

    /// Substitutes every parameter; missing names are an error, extras are ignored here.
    pub fn bind(&self, values: &HashMap<String, Complex64>) -> Result<BiLaurent, PolyError> {
        let mut out = BiLaurent::zero();
        for (m, c) in &self.terms {
            let mut coeff = *c;
            for (name, k) in &m.params {
                let v = values.get(name).ok_or_else(|| PolyError::MissingParameter(name.clone()))?;
                coeff *= v.powu(*k);
            }
            out.add_term((m.z, m.e), coeff);
        }
        Ok(out)
    }

    /// Converts to a plain bivariate polynomial; fails if any parameter is present.
    pub fn into_bilaurent(self) -> Result<BiLaurent, PolyError> {
        if let Some(name) = self.params().into_iter().next() {
            return Err(PolyError::UnknownSymbol(name));
        }
        Ok(BiLaurent::from_terms(self.terms.into_iter().map(|(m, c)| ((m.z, m.e), c))))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Pow,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match ch {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '^' => Tok::Pow,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    i += 1;
                    Tok::Pow
                } else {
                    Tok::Star
                }
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                // optional exponent part, only when followed by digits
                if j < bytes.len() && (bytes[j] == b'e') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lit = &text[i..j];
                let value: f64 = lit.parse().map_err(|_| syntax(start, format!("invalid number `{lit}`")))?;
                let imaginary = j < bytes.len()
                    && (bytes[j] == b'i' || bytes[j] == b'j')
                    && !bytes.get(j + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
                if imaginary {
                    j += 1;
                }
                i = j - 1;
                if imaginary {
                    Tok::Imag(value)
                } else {
                    Tok::Num(value)
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let name = text[i..j].to_string();
                i = j - 1;
                Tok::Ident(name)
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

const MAX_POWER: i64 = 64;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<ParamPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?, 1.0);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.add(&self.term()?, -1.0);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let inv = rhs
                        .monomial_inverse()
                        .ok_or_else(|| syntax(pos, "division is only allowed by a monomial in z"))?;
                    acc = acc.mul(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ParamPoly, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.mul(&ParamPoly::constant(Complex64::new(-1.0, 0.0))))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let pos = self.pos();
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.bump();
        }
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        let value = match self.bump() {
            Some(Tok::Num(v)) if v.fract() == 0.0 && v.abs() <= 1e6 => v as i64,
            _ => return Err(syntax(pos, "exponent must be an integer")),
        };
        if paren {
            match self.bump() {
                Some(Tok::RParen) => {}
                _ => return Err(syntax(self.pos(), "expected `)` after exponent")),
            }
        }
        Ok(sign * value)
    }

    fn power(&mut self) -> Result<ParamPoly, PolyError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Pow)) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let k = self.exponent()?;
        if k.abs() > MAX_POWER {
            return Err(syntax(pos, format!("exponent {k} exceeds limit {MAX_POWER}")));
        }
        let (base, k) = if k < 0 {
            let inv = base
                .monomial_inverse()
                .ok_or_else(|| syntax(pos, "negative exponents are only allowed on monomials in z"))?;
            (inv, -k)
        } else {
            (base, k)
        };
        let mut acc = ParamPoly::constant(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ParamPoly, PolyError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(ParamPoly::constant(Complex64::new(v, 0.0))),
            Some(Tok::Imag(v)) => Ok(ParamPoly::constant(Complex64::new(0.0, v))),
            Some(Tok::Ident(name)) => Ok(match name.as_str() {
                "z" => ParamPoly::variable(1, 0, None),
                "E" => ParamPoly::variable(0, 1, None),
                "i" | "j" | "I" => ParamPoly::constant(Complex64::new(0.0, 1.0)),
                _ => ParamPoly::variable(0, 0, Some(&name)),
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(self.pos().min(self.end), "expected `)`")),
                }
            }
            Some(tok) => Err(syntax(pos, format!("unexpected token {tok:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses an expression that may reference named parameters.
pub fn parse_param_poly(text: &str) -> Result<ParamPoly, PolyError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut parser = Parser { toks, at: 0, end: text.len() };
    let out = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(syntax(parser.pos(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses an expression in `z` and `E` only.
pub fn parse_bilaurent(text: &str) -> Result<BiLaurent, PolyError> {
    parse_param_poly(text)?.into_bilaurent()
}

//! Bivariate Laurent characteristic polynomials `P(z, E)`.
//!
//! A [`LaurentCharPoly`] stores `P(z, E) = sum_n a_n(E) z^n` for
//! `n` in `[-p, q]`, each `a_n` an [`EnergyPoly`]. Values are immutable
//! once built and always in canonical form: like terms combined and
//! coefficients of magnitude below [`CANONICAL_TOL`] dropped.

mod bilaurent;
mod bloch;
mod parse;
mod realspace;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bilaurent::{BiLaurent, Monomial};
pub use bloch::{bareiss_determinant, cofactor_determinant, BlochMatrix};
pub use parse::{parse_bilaurent, parse_param_poly, ParamMonomial, ParamPoly};
pub use realspace::{real_space_hamiltonian, Boundary, DenseMatrix, HamiltonianSource, DEFAULT_MAX_DIM};

/// Coefficients below this magnitude are dropped after combination.
pub const CANONICAL_TOL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is identically zero")]
    Zero,
    #[error("polynomial does not depend on E, so it has no spectrum")]
    NoEnergyDependence,
    #[error("unknown symbol `{0}` (only z and E are allowed)")]
    UnknownSymbol(String),
    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),
    #[error("unexpected parameter `{0}`")]
    ExtraParameter(String),
    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),
    #[error("leading E coefficient must be a nonzero constant, found {0}")]
    LeadingCoefficient(String),
    #[error("chain of {cells} cells is too short for hopping range {range} (need at least {})", range + 1)]
    TooFewCells { cells: usize, range: usize },
    #[error("Hamiltonian dimension {dim} exceeds the cap of {max}")]
    DimensionCap { dim: usize, max: usize },
}

/// `a(E) = sum_m c_m E^m`; trailing coefficient nonzero unless identically zero.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyPoly {
    coeffs: Vec<Complex64>,
}

impl EnergyPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `E`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, e: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * e + c)
    }
}

/// Which mirror symmetry the spectral potential is guaranteed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientSymmetry {
    /// All coefficients real: symmetric under `E -> conj(E)`.
    RealAxis,
    /// `P(z, iE')` has real coefficients up to one global factor of `i`:
    /// symmetric under `E -> -conj(E)`.
    ImagAxis,
    None,
}

/// Characteristic polynomial class: presence vectors of `P(z, E)` and `P(1/z, E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSignature {
    /// `b[k]` is set iff `a_{k-p} != 0`.
    pub b: Vec<u8>,
    pub b_prime: Vec<u8>,
    pub p: u32,
    pub q: u32,
    pub canonical_key: String,
}

impl ClassSignature {
    fn vector_key(p: u32, bits: &[u8]) -> String {
        let bits: String = bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        format!("{p}:{bits}")
    }

    fn new(p: u32, q: u32, b: Vec<u8>) -> Self {
        let mut b_prime = b.clone();
        b_prime.reverse();
        let k1 = Self::vector_key(p, &b);
        let k2 = Self::vector_key(q, &b_prime);
        let canonical_key = if k1 == k2 {
            k1
        } else if k1 < k2 {
            format!("{k1}|{k2}")
        } else {
            format!("{k2}|{k1}")
        };
        Self { b, b_prime, p, q, canonical_key }
    }

    pub fn is_palindrome(&self) -> bool {
        self.b == self.b_prime && self.p == self.q
    }
}

/// `P(z, E) = sum_{n=-p}^{q} a_n(E) z^n` in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCharPoly {
    terms: BTreeMap<i32, EnergyPoly>,
    p: u32,
    q: u32,
    bands: u32,
}

impl LaurentCharPoly {
    /// Builds the canonical polynomial from a bivariate expression.
    pub fn from_bilaurent(poly: &BiLaurent) -> Result<Self, PolyError> {
        let poly = poly.clone().pruned(CANONICAL_TOL);
        let (lo, hi) = poly.z_range().ok_or(PolyError::Zero)?;
        let bands = poly.e_degree().unwrap_or(0);
        if bands == 0 {
            return Err(PolyError::NoEnergyDependence);
        }
        let mut terms = BTreeMap::new();
        for n in lo..=hi {
            let coeffs: Vec<Complex64> = (0..=bands).map(|m| poly.coeff(n, m)).collect();
            let a = EnergyPoly::new(coeffs);
            if !a.is_zero() {
                terms.insert(n, a);
            }
        }
        // a one-sided polynomial (all exponents of one sign) still anchors at z^0
        Ok(Self { terms, p: (-lo).max(0) as u32, q: hi.max(0) as u32, bands })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree of the polynomial in `z` after multiplying by `z^p`.
    pub fn degree(&self) -> usize {
        (self.p + self.q) as usize
    }

    pub fn bands(&self) -> u32 {
        self.bands
    }

    /// Lowest and highest z-exponent actually present.
    pub fn z_span(&self) -> (i32, i32) {
        let lo = *self.terms.keys().next().expect("non-empty");
        let hi = *self.terms.keys().next_back().expect("non-empty");
        (lo, hi)
    }

    pub fn coefficient(&self, n: i32) -> Option<&EnergyPoly> {
        self.terms.get(&n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &EnergyPoly)> {
        self.terms.iter().map(|(n, a)| (*n, a))
    }

    pub fn to_bilaurent(&self) -> BiLaurent {
        BiLaurent::from_terms(
            self.terms.iter().flat_map(|(&n, a)| a.coeffs().iter().enumerate().map(move |(m, &c)| ((n, m as u32), c))),
        )
    }

    /// `(a_{-p}(E), ..., a_q(E))`; absent exponents yield zero.
    pub fn evaluate_coefficients(&self, e: Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.degree() + 1];
        self.evaluate_coefficients_into(e, &mut out);
        out
    }

    /// Same as [`Self::evaluate_coefficients`] into a caller buffer of length `p+q+1`.
    pub fn evaluate_coefficients_into(&self, e: Complex64, out: &mut [Complex64]) {
        out.fill(Complex64::new(0.0, 0.0));
        let p = self.p as i32;
        for (&n, a) in &self.terms {
            out[(n + p) as usize] = a.eval(e);
        }
    }

    /// Substitutes `z -> 1/z`; `p` and `q` swap.
    pub fn reciprocal(&self) -> Self {
        let terms = self.terms.iter().map(|(&n, a)| (-n, a.clone())).collect();
        Self { terms, p: self.q, q: self.p, bands: self.bands }
    }

    pub fn class_signature(&self) -> ClassSignature {
        let p = self.p as i32;
        let b = (-p..=self.q as i32).map(|n| u8::from(self.terms.contains_key(&n))).collect();
        ClassSignature::new(self.p, self.q, b)
    }

    pub fn coefficient_symmetry(&self) -> CoefficientSymmetry {
        let all = || self.terms.values().flat_map(|a| a.coeffs().iter().enumerate().filter(|(_, c)| c.norm() > 0.0));
        let scale = all().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        let tol = CANONICAL_TOL * scale.max(1.0);
        if all().all(|(_, c)| c.im.abs() <= tol) {
            return CoefficientSymmetry::RealAxis;
        }
        // c_{n,m} i^m, optionally divided by one global factor of i
        let rotated = |m: usize, c: &Complex64, extra: u32| c * Complex64::new(0.0, 1.0).powu((m as u32 + extra) % 4);
        for extra in [0, 3] {
            if all().all(|(m, c)| rotated(m, c, extra).im.abs() <= tol) {
                return CoefficientSymmetry::ImagAxis;
            }
        }
        CoefficientSymmetry::None
    }

    /// Leading coefficient of `E^bands` as a Laurent polynomial in z.
    pub fn leading_energy_coefficient(&self) -> BTreeMap<i32, Complex64> {
        self.to_bilaurent().e_coefficient(self.bands)
    }

    /// Multiplies every coefficient by a constant.
    pub fn scaled(&self, c: Complex64) -> Result<Self, PolyError> {
        Self::from_bilaurent(&self.to_bilaurent().scale(c))
    }
}

impl FromStr for LaurentCharPoly {
    type Err = PolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let poly = parse_bilaurent(text)?;
        if poly.clone().pruned(CANONICAL_TOL).is_zero() {
            return Err(PolyError::Zero);
        }
        Self::from_bilaurent(&poly)
    }
}

/// Parses the text grammar into a canonical polynomial.
pub fn parse_char_poly(text: &str) -> Result<LaurentCharPoly, PolyError> {
    text.parse()
}

fn fmt_factor(var: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_string()),
        k => Some(format!("{var}**{k}")),
    }
}

/// Writes one term; returns the text including its leading sign separator.
fn fmt_term(first: bool, c: Complex64, z: i32, e: u32) -> String {
    let factors: Vec<String> = [fmt_factor("z", z as i64), fmt_factor("E", e as i64)].into_iter().flatten().collect();
    let (negative, coeff) = if c.im == 0.0 {
        let mag = c.re.abs();
        let text = if mag == 1.0 && !factors.is_empty() { String::new() } else { format!("{mag}") };
        (c.re < 0.0, text)
    } else if c.re == 0.0 {
        (c.im < 0.0, format!("{}i", c.im.abs()))
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        (false, format!("({}{}{}i)", c.re, sign, c.im.abs()))
    };
    let mut body = coeff;
    for f in factors {
        if !body.is_empty() {
            body.push('*');
        }
        body.push_str(&f);
    }
    match (first, negative) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

impl fmt::Display for LaurentCharPoly {
    /// Canonical text: terms by ascending z-exponent, then ascending E-exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&n, a) in &self.terms {
            for (m, &c) in a.coeffs().iter().enumerate() {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                f.write_str(&fmt_term(first, c, n, m as u32))?;
                first = false;
            }
        }
        Ok(())
    }
}

//! Sparse bivariate polynomials, Laurent in `z` and ordinary in `E`.
//!
//! This is the working ring for symbolic determinants of Bloch matrices.
//! Coefficients are `Complex64`; exact division is carried out by
//! multivariate long division under the order (E-degree, z-degree).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Monomial key `(z exponent, E exponent)`.
pub type Monomial = (i32, u32);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BiLaurent {
    terms: BTreeMap<Monomial, Complex64>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn monomial(c: Complex64, z_exp: i32, e_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            terms.insert((z_exp, e_exp), c);
        }
        Self { terms }
    }

    /// `z^k` with unit coefficient.
    pub fn z_pow(k: i32) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), k, 0)
    }

    /// `E^k` with unit coefficient.
    pub fn e_pow(k: u32) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 0, k)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        let entry = self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, z_exp: i32, e_exp: u32) -> Complex64 {
        self.terms.get(&(z_exp, e_exp)).copied().unwrap_or(Complex64::new(0.0, 0.0))
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

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Highest power of `E` present, `None` for the zero polynomial.
    pub fn e_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, e)| e).max()
    }

    /// Inclusive range of `z` exponents present.
    pub fn z_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|&(z, _)| z).min()?;
        let hi = self.terms.keys().map(|&(z, _)| z).max()?;
        Some((lo, hi))
    }

    /// Drops every coefficient with magnitude below `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    pub fn pruned(mut self, tol: f64) -> Self {
        self.prune(tol);
        self
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(m, v)| (m, v * c)))
    }

    /// Substitutes `z -> 1/z`.
    pub fn invert_z(&self) -> Self {
        Self::from_terms(self.terms().map(|((z, e), c)| ((-z, e), c)))
    }

    /// Multiplies by `z^k`.
    pub fn shift_z(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|((z, e), c)| ((z + k, e), c)))
    }

    /// Coefficient of `E^m` as a Laurent polynomial in `z` (map z-exponent -> value).
    pub fn e_coefficient(&self, m: u32) -> BTreeMap<i32, Complex64> {
        self.terms.iter().filter(|(&(_, e), _)| e == m).map(|(&(z, _), &c)| (z, c)).collect()
    }

    pub fn evaluate(&self, z: Complex64, e: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(zk, ek), &c)| c * z.powi(zk) * e.powu(ek)).sum()
    }

    fn leading(&self) -> Option<(Monomial, Complex64)> {
        // order: E-degree first, then z-degree
        self.terms.iter().max_by(|(a, _), (b, _)| (a.1, a.0).cmp(&(b.1, b.0))).map(|(&m, &c)| (m, c))
    }

    /// Exact division `self / divisor`. Returns `None` when the division
    /// leaves a remainder (relative to `rel_tol` of the dividend scale).
    pub fn exact_div(&self, divisor: &BiLaurent, rel_tol: f64) -> Option<BiLaurent> {
        let (lead_m, lead_c) = divisor.leading()?;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let tol = rel_tol * scale;
        let mut rem = self.clone();
        rem.prune(tol);
        let mut quot = BiLaurent::zero();
        let cap = 64 * (self.len() + divisor.len() + 16);
        for _ in 0..cap {
            let Some((m, c)) = rem.leading() else {
                return Some(quot);
            };
            if m.1 < lead_m.1 {
                return None;
            }
            let qm = (m.0 - lead_m.0, m.1 - lead_m.1);
            let qc = c / lead_c;
            quot.add_term(qm, qc);
            for ((dz, de), dc) in divisor.terms() {
                rem.add_term((dz + qm.0, de + qm.1), -(dc * qc));
            }
            // the leading monomial must cancel exactly
            rem.terms.remove(&m);
            rem.prune(tol);
        }
        None
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m, -c);
        }
        out
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for ((za, ea), ca) in self.terms() {
            for ((zb, eb), cb) in rhs.terms() {
                out.add_term((za + zb, ea + eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

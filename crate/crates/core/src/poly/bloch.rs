//! Bloch Hamiltonians `H(z)` and the determinant `P(z, E) = det[H(z) - E I]`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{parse_bilaurent, BiLaurent, LaurentCharPoly, PolyError, CANONICAL_TOL};

/// Largest band count handled by the symbolic determinant.
pub const MAX_SYMBOLIC_BANDS: usize = 8;

/// Square matrix of Laurent polynomials in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochMatrix {
    size: usize,
    entries: Vec<BiLaurent>,
}

impl BlochMatrix {
    /// Row-major entries; each must be free of `E`.
    pub fn new(size: usize, entries: Vec<BiLaurent>) -> Result<Self, PolyError> {
        if size == 0 || entries.len() != size * size {
            return Err(PolyError::InvalidHamiltonian(format!(
                "expected a square matrix with {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.e_degree().unwrap_or(0) > 0) {
            return Err(PolyError::InvalidHamiltonian("Bloch matrix entries must not depend on E".into()));
        }
        Ok(Self { size, entries })
    }

    /// Parses a matrix given as rows of expression strings.
    pub fn parse(rows: &[&[&str]]) -> Result<Self, PolyError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(PolyError::InvalidHamiltonian("matrix is not square".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter()).map(|s| parse_bilaurent(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &BiLaurent {
        &self.entries[row * self.size + col]
    }

    /// Hopping blocks `T_j`: the coefficient matrices of `z^j`, row-major.
    pub fn hopping_blocks(&self) -> BTreeMap<i32, Vec<Complex64>> {
        let mut blocks: BTreeMap<i32, Vec<Complex64>> = BTreeMap::new();
        let n = self.size;
        for (idx, entry) in self.entries.iter().enumerate() {
            for ((zk, _), c) in entry.terms() {
                blocks.entry(zk).or_insert_with(|| vec![Complex64::new(0.0, 0.0); n * n])[idx] = c;
            }
        }
        blocks
    }

    /// Lowest and highest z-exponent over all entries.
    pub fn z_range(&self) -> Option<(i32, i32)> {
        let ranges: Vec<_> = self.entries.iter().filter_map(|e| e.z_range()).collect();
        let lo = ranges.iter().map(|r| r.0).min()?;
        let hi = ranges.iter().map(|r| r.1).max()?;
        Some((lo, hi))
    }

    /// `P(z, E) = det[H(z) - E I]`, expanded exactly.
    pub fn char_poly(&self) -> Result<LaurentCharPoly, PolyError> {
        let n = self.size;
        if n > MAX_SYMBOLIC_BANDS {
            return Err(PolyError::InvalidHamiltonian(format!(
                "{n} bands exceed the symbolic determinant limit of {MAX_SYMBOLIC_BANDS}"
            )));
        }
        let shifted: Vec<BiLaurent> = self
            .entries
            .iter()
            .enumerate()
            .map(|(idx, e)| if idx / n == idx % n { e - &BiLaurent::e_pow(1) } else { e.clone() })
            .collect();
        let det = if n <= 4 { cofactor_determinant(&shifted, n) } else { bareiss_determinant(&shifted, n)? };
        let det = det.pruned(CANONICAL_TOL);
        if det.is_zero() {
            return Err(PolyError::InvalidHamiltonian("determinant vanishes identically".into()));
        }
        LaurentCharPoly::from_bilaurent(&det)
    }

    /// Companion matrix in `E` of `P(z, E)`, treating `z` as a parameter.
    ///
    /// With `P = sum_k c_k(z) E^k` and constant leading `c_s`, the result has
    /// ones on the subdiagonal and last column `-c_k(z)/c_s`, so that
    /// `det[H - E I] = (-1)^s P / c_s`.
    pub fn companion_of(poly: &LaurentCharPoly) -> Result<Self, PolyError> {
        let s = poly.bands() as usize;
        let full = poly.to_bilaurent();
        let lead = full.e_coefficient(s as u32);
        let lead_c = match (lead.len(), lead.get(&0)) {
            (1, Some(c)) if *c != Complex64::new(0.0, 0.0) => *c,
            _ => {
                let text = lead.iter().map(|(k, c)| format!("({c})*z^{k}")).collect::<Vec<_>>().join(" + ");
                return Err(PolyError::LeadingCoefficient(if text.is_empty() { "0".into() } else { text }));
            }
        };
        let mut entries = vec![BiLaurent::zero(); s * s];
        for i in 1..s {
            entries[i * s + (i - 1)] = BiLaurent::one();
        }
        for k in 0..s {
            let col = full.e_coefficient(k as u32);
            entries[k * s + (s - 1)] = BiLaurent::from_terms(col.into_iter().map(|(zk, c)| ((zk, 0), -c / lead_c)));
        }
        Self::new(s, entries)
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_determinant(m: &[BiLaurent], n: usize) -> BiLaurent {
    match n {
        0 => BiLaurent::one(),
        1 => m[0].clone(),
        2 => &(&m[0] * &m[3]) - &(&m[1] * &m[2]),
        _ => {
            let mut det = BiLaurent::zero();
            for col in 0..n {
                if m[col].is_zero() {
                    continue;
                }
                let minor: Vec<BiLaurent> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&c| c != col).map(move |c| (r, c)))
                    .map(|(r, c)| m[r * n + c].clone())
                    .collect();
                let term = &m[col] * &cofactor_determinant(&minor, n - 1);
                det = if col % 2 == 0 { &det + &term } else { &det - &term };
            }
            det
        }
    }
}

/// Fraction-free Bareiss elimination over the polynomial ring.
pub fn bareiss_determinant(m: &[BiLaurent], n: usize) -> Result<BiLaurent, PolyError> {
    let mut a = m.to_vec();
    let mut sign = 1.0;
    let mut prev = BiLaurent::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Ok(BiLaurent::zero());
            };
            for c in 0..n {
                a.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i * n + j] * &pivot) - &(&a[i * n + k] * &a[k * n + j]);
                a[i * n + j] = num
                    .exact_div(&prev, 1e-10)
                    .ok_or_else(|| PolyError::InvalidHamiltonian("inexact division in Bareiss elimination".into()))?;
            }
            a[i * n + k] = BiLaurent::zero();
        }
        prev = pivot;
    }
    Ok(a[n * n - 1].scale(Complex64::new(sign, 0.0)))
}

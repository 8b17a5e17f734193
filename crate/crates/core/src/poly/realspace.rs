//! Finite-chain (block-Toeplitz) real-space Hamiltonians.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BlochMatrix, LaurentCharPoly, PolyError};

/// Default cap on the real-space matrix dimension.
pub const DEFAULT_MAX_DIM: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

/// Either a characteristic polynomial (routed through its companion in `E`)
/// or an explicit Bloch matrix.
#[derive(Clone, Copy, Debug)]
pub enum HamiltonianSource<'a> {
    Poly(&'a LaurentCharPoly),
    Bloch(&'a BlochMatrix),
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.n + c] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// Builds the `N`-cell chain Hamiltonian. Block `(x, x')` holds `T_{x - x'}`,
/// so a pure `z` hopping lands on the block subdiagonal; periodic chains add
/// the wrap-around blocks.
pub fn real_space_hamiltonian(
    source: HamiltonianSource<'_>,
    cells: usize,
    boundary: Boundary,
    max_dim: usize,
) -> Result<DenseMatrix, PolyError> {
    let owned;
    let bloch = match source {
        HamiltonianSource::Bloch(b) => b,
        HamiltonianSource::Poly(p) => {
            owned = BlochMatrix::companion_of(p)?;
            &owned
        }
    };
    let s = bloch.size();
    let (lo, hi) = bloch.z_range().unwrap_or((0, 0));
    let (lo, hi) = (lo.min(0), hi.max(0));
    let range = (hi - lo) as usize;
    if cells < range + 1 {
        return Err(PolyError::TooFewCells { cells, range });
    }
    let dim = cells * s;
    if dim > max_dim {
        return Err(PolyError::DimensionCap { dim, max: max_dim });
    }
    let blocks = bloch.hopping_blocks();
    let mut h = DenseMatrix::zeros(dim);
    let n = cells as i64;
    for x in 0..n {
        for (&j, block) in &blocks {
            let target = x - j as i64;
            let col_cell = match boundary {
                Boundary::Open if (0..n).contains(&target) => target,
                Boundary::Open => continue,
                Boundary::Periodic => target.rem_euclid(n),
            };
            for a in 0..s {
                for b in 0..s {
                    let v = block[a * s + b];
                    let (r, c) = (x as usize * s + a, col_cell as usize * s + b);
                    h.set(r, c, h.get(r, c) + v);
                }
            }
        }
    }
    Ok(h)
}

//! Companion-matrix root finding and the dense complex eigensolver.

mod qr;

use std::cmp::Ordering;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{DenseMatrix, LaurentCharPoly};

/// Leading coefficients below this fraction of the largest magnitude are
/// treated as zero and the degree is reduced.
pub const LEAD_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EigenError {
    #[error("QR iteration did not converge for a {dim}x{dim} matrix within {sweeps} sweeps")]
    NoConvergence { dim: usize, sweeps: usize },
    #[error("all polynomial coefficients are zero")]
    ZeroPolynomial,
    #[error("polynomial is a nonzero constant after degree reduction")]
    ConstantPolynomial,
    #[error("matrix is not square: {len} entries for dimension {dim}")]
    NotSquare { dim: usize, len: usize },
    #[error("root solve failed at E = {energy}: {source}")]
    AtEnergy {
        energy: Complex64,
        #[source]
        source: Box<EigenError>,
    },
}

/// Frobenius companion matrix of `sum_m c_m z^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionMatrix {
    pub dim: usize,
    pub entries: DenseMatrix,
}

/// Roots sorted by `(|z|, arg z)` plus the number dropped at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub degree_deficit: usize,
}

impl RootSet {
    fn new(mut roots: Vec<Complex64>, degree_deficit: usize) -> Self {
        roots.sort_by(root_order);
        debug_assert!(roots.windows(2).all(|w| w[0].norm() <= w[1].norm()));
        Self { roots, degree_deficit }
    }

    pub fn magnitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().map(|z| z.norm())
    }
}

fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.norm().total_cmp(&b.norm()).then_with(|| a.arg().total_cmp(&b.arg()))
}

/// Strips leading coefficients below `LEAD_EPS` relative to the largest.
/// Returns the effective degree and the number of dropped orders.
fn effective_degree(coeffs: &[Complex64]) -> Result<(usize, usize), EigenError> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 || coeffs.is_empty() {
        return Err(EigenError::ZeroPolynomial);
    }
    let mut top = coeffs.len() - 1;
    while coeffs[top].norm() < LEAD_EPS * max {
        top -= 1;
    }
    Ok((top, coeffs.len() - 1 - top))
}

fn fill_companion(coeffs: &[Complex64], deg: usize, out: &mut Vec<Complex64>) {
    out.clear();
    out.resize(deg * deg, Complex64::new(0.0, 0.0));
    for i in 1..deg {
        out[i * deg + i - 1] = Complex64::new(1.0, 0.0);
    }
    let lead = coeffs[deg];
    for m in 0..deg {
        out[m * deg + deg - 1] = -coeffs[m] / lead;
    }
}

/// Companion matrix after degree reduction.
pub fn companion_in_z(coeffs: &[Complex64]) -> Result<CompanionMatrix, EigenError> {
    let (deg, _) = effective_degree(coeffs)?;
    if deg == 0 {
        return Err(EigenError::ConstantPolynomial);
    }
    let mut data = Vec::new();
    fill_companion(coeffs, deg, &mut data);
    Ok(CompanionMatrix { dim: deg, entries: DenseMatrix { n: deg, data } })
}

/// All eigenvalues with multiplicity, in no particular order.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<Complex64>, EigenError> {
    if m.data.len() != m.n * m.n {
        return Err(EigenError::NotSquare { dim: m.n, len: m.data.len() });
    }
    let mut out = Vec::with_capacity(m.n);
    qr::dense_eigenvalues(&m.data, m.n, &mut out)?;
    Ok(out)
}

/// Reusable scratch space for repeated root solves on one thread.
#[derive(Default, Debug)]
pub struct RootSolver {
    work: Vec<Complex64>,
    eig: Vec<Complex64>,
}

impl RootSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Roots of `sum_m c_m z^m`, sorted by `(|z|, arg z)`.
    pub fn solve(&mut self, coeffs: &[Complex64]) -> Result<RootSet, EigenError> {
        let (deg, deficit) = effective_degree(coeffs)?;
        // exact zero roots are factored out rather than left to the iteration
        let zeros = coeffs[..deg].iter().take_while(|c| **c == Complex64::new(0.0, 0.0)).count();
        let rest = &coeffs[zeros..=deg];
        let d = deg - zeros;
        let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
        match d {
            0 => {}
            1 => roots.push(-rest[0] / rest[1]),
            _ => {
                fill_companion(rest, d, &mut self.work);
                // the companion is already upper Hessenberg
                qr::balance(&mut self.work, d);
                qr::hessenberg_qr(&mut self.work, d, 100 * d, &mut self.eig)?;
                roots.extend_from_slice(&self.eig);
            }
        }
        Ok(RootSet::new(roots, deficit))
    }
}

/// Roots of `sum_m c_m z^m` (coefficient of `z^m` at index `m`).
pub fn poly_roots(coeffs: &[Complex64]) -> Result<RootSet, EigenError> {
    RootSolver::new().solve(coeffs)
}

/// `poly_roots(evaluate_coefficients(poly, E))` for every energy, in
/// parallel, order-aligned with the input.
pub fn batch_roots(poly: &LaurentCharPoly, energies: &[Complex64]) -> Result<Vec<RootSet>, EigenError> {
    let len = poly.degree() + 1;
    energies
        .par_iter()
        .map_init(
            || (RootSolver::new(), vec![Complex64::new(0.0, 0.0); len]),
            |(solver, buf), &e| {
                poly.evaluate_coefficients_into(e, buf);
                solver.solve(buf).map_err(|err| EigenError::AtEnergy { energy: e, source: Box::new(err) })
            },
        )
        .collect()
}

//! Spectral potential, density of states and GBZ residual over square
//! complex-energy windows.

mod adaptive;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{eigenvalues, EigenError, RootSolver};
use crate::poly::{
    real_space_hamiltonian, Boundary, CoefficientSymmetry, HamiltonianSource, LaurentCharPoly, PolyError,
    DEFAULT_MAX_DIM,
};

pub use adaptive::{adaptive_dos, refine_masked, AdaptiveOptions, AdaptiveOutput, RefinementPlan, ThresholdSupport};

/// Magnitudes are clamped to this before taking logarithms.
pub const LOG_FLOOR: f64 = 1e-300;
/// Smallest supported grid.
pub const MIN_RESOLUTION: usize = 16;
/// Half-width used when the finite-chain spectrum collapses to a point.
pub const MIN_HALF_WIDTH: f64 = 1.0;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("invalid window: {0}")]
    Window(String),
    #[error("root solve failed at pixel (row {row}, col {col}), E = {energy}: {source}")]
    Pixel {
        row: usize,
        col: usize,
        energy: Complex64,
        #[source]
        source: EigenError,
    },
    #[error("window estimation failed: {0}")]
    Estimate(String),
    #[error("GBZ residual needs p >= 1 and q >= 1 (got p = {p}, q = {q}); with a one-sided polynomial there is no pair of middle roots")]
    GbzUndefined { p: u32, q: u32 },
    #[error("empty spectrum window: no coarse pixel exceeds the mean density of states")]
    EmptySpectrum { coarse_phi: Box<ScalarField>, coarse_dos: Box<ScalarField> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Square region of the complex energy plane sampled on a `resolution`²
/// grid. Row `r`, column `c` has centre
/// `(re_min + (c + 1/2) h) + i (im_min + (r + 1/2) h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub resolution: usize,
}

impl EnergyWindow {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, resolution: usize) -> Result<Self, FieldError> {
        let w = Self { re_min, re_max, im_min, im_max, resolution };
        w.validate()?;
        Ok(w)
    }

    pub fn square(center: Complex64, half_width: f64, resolution: usize) -> Result<Self, FieldError> {
        Self::new(
            center.re - half_width,
            center.re + half_width,
            center.im - half_width,
            center.im + half_width,
            resolution,
        )
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        let (wr, wi) = (self.re_max - self.re_min, self.im_max - self.im_min);
        if ![self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite()) || wr <= 0.0 {
            return Err(FieldError::Window(format!("bounds must be finite and increasing, got {self:?}")));
        }
        if (wr - wi).abs() > 1e-9 * wr.max(wi) {
            return Err(FieldError::Window(format!("window must be square, got {wr} x {wi}")));
        }
        if self.resolution < MIN_RESOLUTION {
            return Err(FieldError::Window(format!(
                "resolution {} is below the minimum {MIN_RESOLUTION}",
                self.resolution
            )));
        }
        Ok(())
    }

    pub fn with_resolution(&self, resolution: usize) -> Self {
        Self { resolution, ..*self }
    }

    /// Pixel pitch in energy units.
    #[inline]
    pub fn pitch(&self) -> f64 {
        (self.re_max - self.re_min) / self.resolution as f64
    }

    #[inline]
    pub fn pixel_center(&self, row: usize, col: usize) -> Complex64 {
        let h = self.pitch();
        Complex64::new(self.re_min + (col as f64 + 0.5) * h, self.im_min + (row as f64 + 0.5) * h)
    }

    /// Fractional `(row, col)` whose centre is `e`.
    pub fn to_pixel(&self, e: Complex64) -> (f64, f64) {
        let h = self.pitch();
        ((e.im - self.im_min) / h - 0.5, (e.re - self.re_min) / h - 0.5)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.re_max - self.re_min)
    }

    pub fn contains(&self, e: Complex64) -> bool {
        e.re >= self.re_min && e.re <= self.re_max && e.im >= self.im_min && e.im <= self.im_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Potential,
    Dos,
    GbzResidual,
    Binary,
}

impl FieldKind {
    pub fn code(self) -> u32 {
        match self {
            FieldKind::Potential => 0,
            FieldKind::Dos => 1,
            FieldKind::GbzResidual => 2,
            FieldKind::Binary => 3,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        [FieldKind::Potential, FieldKind::Dos, FieldKind::GbzResidual, FieldKind::Binary]
            .into_iter()
            .find(|k| k.code() == code)
    }
}

/// Real values on a window grid, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    pub window: EnergyWindow,
    pub values: Vec<f64>,
    pub kind: FieldKind,
}

impl ScalarField {
    pub fn new(window: EnergyWindow, values: Vec<f64>, kind: FieldKind) -> Self {
        assert_eq!(values.len(), window.resolution * window.resolution, "grid does not match window");
        Self { window, values, kind }
    }

    pub fn from_fn(window: EnergyWindow, kind: FieldKind, f: impl Fn(usize, usize) -> f64) -> Self {
        let n = window.resolution;
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self { window, values, kind }
    }

    #[inline]
    pub fn res(&self) -> usize {
        self.window.resolution
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.res() + col]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Per-thread state for evaluating root-derived quantities at many energies.
pub(crate) struct PixelEval<'a> {
    poly: &'a LaurentCharPoly,
    solver: RootSolver,
    coeffs: Vec<Complex64>,
}

impl<'a> PixelEval<'a> {
    pub(crate) fn new(poly: &'a LaurentCharPoly) -> Self {
        Self { poly, solver: RootSolver::new(), coeffs: vec![Complex64::new(0.0, 0.0); poly.degree() + 1] }
    }

    /// `-log|a_q(E)| - sum_{i=p+1}^{p+q} log|z_i(E)|`. When the leading
    /// coefficient vanishes the effective leading coefficient and the finite
    /// roots take its place.
    pub(crate) fn potential(&mut self, e: Complex64) -> Result<f64, EigenError> {
        self.poly.evaluate_coefficients_into(e, &mut self.coeffs);
        let rs = self.solver.solve(&self.coeffs)?;
        let lead = self.coeffs[self.coeffs.len() - 1 - rs.degree_deficit];
        let p = self.poly.p() as usize;
        let mut phi = -lead.norm().max(LOG_FLOOR).ln();
        for z in rs.roots.iter().skip(p) {
            phi -= z.norm().max(LOG_FLOOR).ln();
        }
        Ok(phi)
    }

    /// `|z_{p+1}| - |z_p|`, infinite when fewer than `p + 1` roots are finite.
    pub(crate) fn gbz_residual(&mut self, e: Complex64) -> Result<f64, EigenError> {
        self.poly.evaluate_coefficients_into(e, &mut self.coeffs);
        let rs = self.solver.solve(&self.coeffs)?;
        let p = self.poly.p() as usize;
        Ok(match (rs.roots.get(p - 1), rs.roots.get(p)) {
            (Some(a), Some(b)) => b.norm() - a.norm(),
            _ => f64::INFINITY,
        })
    }
}

/// Which half of the grid determines the other by reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mirror {
    None,
    /// Row `r` mirrors row `n - 1 - r` (conjugation symmetry).
    Rows,
    /// Column `c` mirrors column `n - 1 - c` (reflection through the imaginary axis).
    Cols,
}

impl Mirror {
    /// Mirroring applies only when the window is centred on the symmetry axis.
    pub(crate) fn for_poly(poly: &LaurentCharPoly, window: &EnergyWindow) -> Self {
        let c = window.center();
        match poly.coefficient_symmetry() {
            CoefficientSymmetry::RealAxis if c.im == 0.0 && window.im_min == -window.im_max => Mirror::Rows,
            CoefficientSymmetry::ImagAxis if c.re == 0.0 && window.re_min == -window.re_max => Mirror::Cols,
            _ => Mirror::None,
        }
    }

    /// The representative pixel whose value is shared by `(r, c)`.
    #[inline]
    pub(crate) fn source(self, n: usize, r: usize, c: usize) -> (usize, usize) {
        match self {
            Mirror::Rows if r >= n / 2 => (n - 1 - r, c),
            Mirror::Cols if c >= n / 2 => (r, n - 1 - c),
            _ => (r, c),
        }
    }
}

/// Evaluates `f` at every listed pixel in parallel, order-aligned.
pub(crate) fn eval_pixels(
    poly: &LaurentCharPoly,
    window: &EnergyWindow,
    pixels: &[usize],
    f: impl Fn(&mut PixelEval<'_>, Complex64) -> Result<f64, EigenError> + Sync,
) -> Result<Vec<f64>, FieldError> {
    let n = window.resolution;
    pixels
        .par_iter()
        .map_init(
            || PixelEval::new(poly),
            |ev, &idx| {
                let (row, col) = (idx / n, idx % n);
                let e = window.pixel_center(row, col);
                f(ev, e).map_err(|source| FieldError::Pixel { row, col, energy: e, source })
            },
        )
        .collect()
}

fn full_field(
    poly: &LaurentCharPoly,
    window: &EnergyWindow,
    mirror: Mirror,
    kind: FieldKind,
    f: impl Fn(&mut PixelEval<'_>, Complex64) -> Result<f64, EigenError> + Sync,
) -> Result<ScalarField, FieldError> {
    window.validate()?;
    let n = window.resolution;
    let sources: Vec<usize> = (0..n * n).filter(|&i| mirror.source(n, i / n, i % n) == (i / n, i % n)).collect();
    let computed = eval_pixels(poly, window, &sources, f)?;
    let mut values = vec![f64::NAN; n * n];
    for (&i, v) in sources.iter().zip(computed) {
        values[i] = v;
    }
    for i in 0..n * n {
        let (r, c) = mirror.source(n, i / n, i % n);
        values[i] = values[r * n + c];
    }
    Ok(ScalarField::new(*window, values, kind))
}

/// Spectral potential at every pixel centre; symmetric polynomials on
/// axis-centred windows compute one half and mirror it.
pub fn spectral_potential(poly: &LaurentCharPoly, window: &EnergyWindow) -> Result<ScalarField, FieldError> {
    full_field(poly, window, Mirror::for_poly(poly, window), FieldKind::Potential, |ev, e| ev.potential(e))
}

/// As [`spectral_potential`] but always evaluating every pixel.
pub fn spectral_potential_unmirrored(poly: &LaurentCharPoly, window: &EnergyWindow) -> Result<ScalarField, FieldError> {
    full_field(poly, window, Mirror::None, FieldKind::Potential, |ev, e| ev.potential(e))
}

/// Potential at a single energy.
pub fn potential_at(poly: &LaurentCharPoly, e: Complex64) -> Result<f64, EigenError> {
    PixelEval::new(poly).potential(e)
}

/// `|z_{p+1}| - |z_p|` per pixel.
pub fn gbz_residual(poly: &LaurentCharPoly, window: &EnergyWindow) -> Result<ScalarField, FieldError> {
    if poly.p() == 0 || poly.q() == 0 {
        return Err(FieldError::GbzUndefined { p: poly.p(), q: poly.q() });
    }
    full_field(poly, window, Mirror::for_poly(poly, window), FieldKind::GbzResidual, |ev, e| ev.gbz_residual(e))
}

/// Five-point Laplacian `(N + S + E + W - 4C) / h²` at pixel `idx`, with
/// out-of-grid neighbours replaced by the pixel itself.
#[inline]
pub(crate) fn laplacian_at(values: &[f64], n: usize, h: f64, idx: usize) -> f64 {
    let (r, c) = (idx / n, idx % n);
    let center = values[idx];
    let up = if r > 0 { values[idx - n] } else { center };
    let down = if r + 1 < n { values[idx + n] } else { center };
    let left = if c > 0 { values[idx - 1] } else { center };
    let right = if c + 1 < n { values[idx + 1] } else { center };
    (up + down + left + right - 4.0 * center) / (h * h)
}

/// Discrete Laplacian of a field (replicate padding at the border).
pub fn laplacian(field: &ScalarField) -> Vec<f64> {
    let n = field.res();
    let h = field.window.pitch();
    (0..n * n).map(|i| laplacian_at(&field.values, n, h, i)).collect()
}

#[inline]
pub(crate) fn dos_from_laplacian(lap: f64) -> f64 {
    (-lap / (2.0 * PI)).max(0.0)
}

/// `rho = -lap(phi) / 2pi`, negatives clamped to zero.
pub fn density_of_states(phi: &ScalarField) -> ScalarField {
    let values = laplacian(phi).into_iter().map(dos_from_laplacian).collect();
    ScalarField::new(phi.window, values, FieldKind::Dos)
}

/// Of `P` and its reciprocal, the one whose canonical text sorts first.
/// Both share a spectrum, so windows estimated from it agree bit for bit.
pub fn canonical_orientation(poly: &LaurentCharPoly) -> LaurentCharPoly {
    let rec = poly.reciprocal();
    if rec.to_string() < poly.to_string() {
        rec
    } else {
        poly.clone()
    }
}

/// Finite-chain eigenvalues of the `cells`-cell open chain.
pub fn finite_chain_spectrum(
    poly: &LaurentCharPoly,
    cells: usize,
    boundary: Boundary,
) -> Result<Vec<Complex64>, FieldError> {
    let h = real_space_hamiltonian(HamiltonianSource::Poly(poly), cells, boundary, DEFAULT_MAX_DIM)?;
    eigenvalues(&h).map_err(|e| FieldError::Estimate(e.to_string()))
}

/// Window together with the finite-chain spectrum it was fitted to.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowEstimate {
    pub window: EnergyWindow,
    pub spectrum: Vec<Complex64>,
    /// The spectrum has collapsed to a single point.
    pub degenerate: bool,
}

/// Square window around the open-chain spectrum of `cells` cells, padded by
/// `pad_fraction` of each half-range and centred on the symmetry axis when
/// the coefficients have one.
pub fn estimate_window(
    poly: &LaurentCharPoly,
    cells: usize,
    pad_fraction: f64,
    resolution: usize,
) -> Result<EnergyWindow, FieldError> {
    Ok(estimate_window_detailed(poly, cells, pad_fraction, resolution)?.window)
}

pub fn estimate_window_detailed(
    poly: &LaurentCharPoly,
    cells: usize,
    pad_fraction: f64,
    resolution: usize,
) -> Result<WindowEstimate, FieldError> {
    let oriented = canonical_orientation(poly);
    let range = oriented.degree();
    let bands = oriented.bands() as usize;
    let mut cells = cells.max(range + 1);
    if cells * bands > DEFAULT_MAX_DIM {
        cells = (DEFAULT_MAX_DIM / bands).max(range + 1);
    }
    let ev = finite_chain_spectrum(&oriented, cells, Boundary::Open)?;
    let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&Complex64) -> f64| ev.iter().map(g).fold(init, f);
    let (re_lo, re_hi) = (fold(f64::min, f64::INFINITY, |z| z.re), fold(f64::max, f64::NEG_INFINITY, |z| z.re));
    let (im_lo, im_hi) = (fold(f64::min, f64::INFINITY, |z| z.im), fold(f64::max, f64::NEG_INFINITY, |z| z.im));
    let mut center = Complex64::new(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi));
    let spread = (re_hi - re_lo).max(im_hi - im_lo);
    let degenerate = spread <= 1e-9 * (1.0 + center.norm());
    let mut half = 0.5 * spread * (1.0 + pad_fraction);
    match oriented.coefficient_symmetry() {
        CoefficientSymmetry::RealAxis => {
            half += center.im.abs();
            center.im = 0.0;
        }
        CoefficientSymmetry::ImagAxis => {
            half += center.re.abs();
            center.re = 0.0;
        }
        CoefficientSymmetry::None => {}
    }
    let half = half.max(MIN_HALF_WIDTH);
    let window = EnergyWindow::square(center, half, resolution)?;
    Ok(WindowEstimate { window, spectrum: ev, degenerate })
}

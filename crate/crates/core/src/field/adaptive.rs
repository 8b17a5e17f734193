//! Two-stage evaluation: a coarse pass locates the spectral locus, a fine
//! pass recomputes only the masked pixels on an `m`-times finer grid.

use serde::{Deserialize, Serialize};

use super::{dos_from_laplacian, eval_pixels, laplacian_at, FieldError, FieldKind, Mirror, ScalarField};
use crate::field::{density_of_states, EnergyWindow};
use crate::morphology::{binarize_mean, binarize_mean_on, dilate_disk2, BinaryImage};
use crate::poly::LaurentCharPoly;

/// Largest fine grid.
pub const MAX_FINE_RESOLUTION: usize = 4096;

/// Pixels averaged to form the final binarization threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdSupport {
    /// Only refined pixels.
    Refined,
    /// The whole fine grid, unrefined pixels counting as zero.
    FullGrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveOptions {
    pub base_res: usize,
    pub m: usize,
    pub threshold: ThresholdSupport,
    /// Exploit conjugation / imaginary-axis symmetry when present.
    pub mirror: bool,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { base_res: 256, m: 4, threshold: ThresholdSupport::FullGrid, mirror: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefinementPlan {
    pub coarse_res: usize,
    pub m: usize,
    /// Dilated coarse mask, row-major at `coarse_res`.
    pub mask: Vec<bool>,
    /// Fine-grid indices recomputed in stage two, ascending.
    pub refined: Vec<usize>,
    /// Fine pixels whose potential was evaluated (refined plus stencil ring).
    pub evaluated: usize,
}

impl RefinementPlan {
    pub fn fine_res(&self) -> usize {
        self.coarse_res * self.m
    }

    pub fn refined_fraction(&self) -> f64 {
        self.refined.len() as f64 / (self.fine_res() * self.fine_res()) as f64
    }

    pub fn mask_fraction(&self) -> f64 {
        self.mask.iter().filter(|b| **b).count() as f64 / self.mask.len() as f64
    }

    /// Whether fine pixel `(r, c)` lies in a masked coarse pixel.
    pub fn covers(&self, r: usize, c: usize) -> bool {
        self.mask[(r / self.m) * self.coarse_res + c / self.m]
    }
}

#[derive(Clone, Debug)]
pub struct AdaptiveOutput {
    pub phi: ScalarField,
    pub dos: ScalarField,
    pub binary: BinaryImage,
    pub plan: RefinementPlan,
    pub coarse_phi: ScalarField,
    pub coarse_dos: ScalarField,
}

fn mirror_mask(mask: &mut [bool], n: usize, mirror: Mirror) {
    if mirror == Mirror::None {
        return;
    }
    for r in 0..n {
        for c in 0..n {
            let (rr, cc) = match mirror {
                Mirror::Rows => (n - 1 - r, c),
                _ => (r, n - 1 - c),
            };
            if mask[r * n + c] {
                mask[rr * n + cc] = true;
            }
        }
    }
}

/// Recomputes the potential on the `m`-fold subdivision of every masked
/// coarse pixel (plus a one-pixel ring for the stencil) and the density of
/// states on the masked pixels. Unmasked density is zero; unmasked potential
/// is taken from `coarse_phi` when given, else left as NaN.
pub fn refine_masked(
    poly: &LaurentCharPoly,
    window: &EnergyWindow,
    mask: &[bool],
    m: usize,
    mirror: bool,
    coarse_phi: Option<&ScalarField>,
) -> Result<(ScalarField, ScalarField, RefinementPlan), FieldError> {
    let coarse_res = window.resolution;
    assert_eq!(mask.len(), coarse_res * coarse_res, "mask does not match window");
    let n = coarse_res * m;
    if m == 0 || n > MAX_FINE_RESOLUTION {
        return Err(FieldError::Window(format!(
            "fine resolution {coarse_res} x {m} must be between 1 and {MAX_FINE_RESOLUTION}"
        )));
    }
    let fine = window.with_resolution(n);
    fine.validate()?;
    let mirror = if mirror { Mirror::for_poly(poly, &fine) } else { Mirror::None };
    let covered = |r: usize, c: usize| mask[(r / m) * coarse_res + c / m];

    let refined: Vec<usize> = (0..n * n).filter(|&i| covered(i / n, i % n)).collect();
    let mut needed = vec![false; n * n];
    for &i in &refined {
        let (r, c) = (i / n, i % n);
        needed[i] = true;
        if r > 0 {
            needed[i - n] = true;
        }
        if r + 1 < n {
            needed[i + n] = true;
        }
        if c > 0 {
            needed[i - 1] = true;
        }
        if c + 1 < n {
            needed[i + 1] = true;
        }
    }
    let mut is_source = vec![false; n * n];
    for i in (0..n * n).filter(|&i| needed[i]) {
        let (r, c) = mirror.source(n, i / n, i % n);
        is_source[r * n + c] = true;
    }
    let sources: Vec<usize> = (0..n * n).filter(|&i| is_source[i]).collect();
    let computed = eval_pixels(poly, &fine, &sources, |ev, e| ev.potential(e))?;

    let mut phi = vec![f64::NAN; n * n];
    for (&i, v) in sources.iter().zip(computed) {
        phi[i] = v;
    }
    for i in (0..n * n).filter(|&i| needed[i]) {
        let (r, c) = mirror.source(n, i / n, i % n);
        phi[i] = phi[r * n + c];
    }
    let h = fine.pitch();
    let mut dos = vec![0.0; n * n];
    for &i in &refined {
        dos[i] = dos_from_laplacian(laplacian_at(&phi, n, h, i));
    }
    if let Some(cp) = coarse_phi {
        for i in (0..n * n).filter(|&i| !needed[i]) {
            phi[i] = cp.get((i / n) / m, (i % n) / m);
        }
    }
    let evaluated = needed.iter().filter(|b| **b).count();
    let plan = RefinementPlan { coarse_res, m, mask: mask.to_vec(), refined, evaluated };
    Ok((ScalarField::new(fine, phi, FieldKind::Potential), ScalarField::new(fine, dos, FieldKind::Dos), plan))
}

/// Coarse pass at `base_res`, mean-threshold, 2x2 dilation, then
/// [`refine_masked`] and a final mean-threshold of the composed density.
pub fn adaptive_dos(
    poly: &LaurentCharPoly,
    window: &EnergyWindow,
    opts: &AdaptiveOptions,
) -> Result<AdaptiveOutput, FieldError> {
    let coarse_w = window.with_resolution(opts.base_res);
    coarse_w.validate()?;
    if opts.m == 0 || opts.base_res * opts.m > MAX_FINE_RESOLUTION {
        return Err(FieldError::Window(format!(
            "fine resolution {} x {} exceeds {MAX_FINE_RESOLUTION}",
            opts.base_res, opts.m
        )));
    }
    let coarse_phi = if opts.mirror {
        super::spectral_potential(poly, &coarse_w)?
    } else {
        super::spectral_potential_unmirrored(poly, &coarse_w)?
    };
    let coarse_dos = density_of_states(&coarse_phi);
    let coarse_bin = binarize_mean(&coarse_dos);
    if coarse_bin.is_empty() {
        return Err(FieldError::EmptySpectrum { coarse_phi: Box::new(coarse_phi), coarse_dos: Box::new(coarse_dos) });
    }
    let mut mask = dilate_disk2(&coarse_bin).bits;
    if opts.mirror {
        mirror_mask(&mut mask, opts.base_res, Mirror::for_poly(poly, &coarse_w));
    }
    let (phi, dos, plan) = refine_masked(poly, &coarse_w, &mask, opts.m, opts.mirror, Some(&coarse_phi))?;
    let binary = match opts.threshold {
        ThresholdSupport::FullGrid => binarize_mean_on(&dos, None),
        ThresholdSupport::Refined => {
            let n = dos.res();
            let support: Vec<bool> = (0..n * n).map(|i| plan.covers(i / n, i % n)).collect();
            binarize_mean_on(&dos, Some(&support))
        }
    };
    Ok(AdaptiveOutput { phi, dos, binary, plan, coarse_phi, coarse_dos })
}

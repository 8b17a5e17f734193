//! End-to-end extraction: polynomial to spectral multigraph.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    classify_pixels, merge_nearby_nodes, to_energy_coords, trace_edges, GraphNode, PostProcess, SpectralMultigraph,
};
use crate::field::{
    adaptive_dos, estimate_window_detailed, AdaptiveOptions, EnergyWindow, FieldError, ScalarField, ThresholdSupport,
};
use crate::morphology::{skeletonize, BinaryImage};
use crate::poly::LaurentCharPoly;

/// Short-edge threshold applied to multiband polynomials when none is set.
pub const MULTIBAND_SHORT_EDGE_PX: f64 = 20.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExtractionConfig {
    /// Coarse grid resolution.
    pub resolution: usize,
    /// Subdivision factor of the fine pass.
    pub refine: usize,
    /// Fixed window; estimated from the finite chain when absent.
    pub window: Option<EnergyWindow>,
    /// Cells of the finite chain used for window estimation.
    pub cells: usize,
    pub pad: f64,
    pub merge_tol_px: f64,
    /// `None` picks 0 for one band and [`MULTIBAND_SHORT_EDGE_PX`] otherwise.
    pub short_edge_px: Option<f64>,
    pub threshold: ThresholdSupport,
    pub mirror: bool,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            resolution: 256,
            refine: 4,
            window: None,
            cells: 40,
            pad: 0.2,
            merge_tol_px: 5.0,
            short_edge_px: None,
            threshold: ThresholdSupport::FullGrid,
            mirror: true,
        }
    }
}

impl ExtractionConfig {
    pub fn short_edge_for(&self, poly: &LaurentCharPoly) -> f64 {
        self.short_edge_px.unwrap_or(if poly.bands() > 1 { MULTIBAND_SHORT_EDGE_PX } else { 0.0 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Parse,
    Window,
    Field,
    Skeleton,
    Graph,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Parse => "parse",
            Stage::Window => "window",
            Stage::Field => "field",
            Stage::Skeleton => "skeleton",
            Stage::Graph => "graph",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("[{stage}] {polynomial}: {message}")]
pub struct ExtractError {
    pub polynomial: String,
    pub stage: Stage,
    pub message: String,
}

impl ExtractError {
    pub fn new(poly: impl fmt::Display, stage: Stage, message: impl fmt::Display) -> Self {
        Self { polynomial: poly.to_string(), stage, message: message.to_string() }
    }
}

/// Graph together with the intermediate fields it was built from.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub graph: SpectralMultigraph,
    pub window: EnergyWindow,
    pub phi: ScalarField,
    pub dos: ScalarField,
    pub binary: BinaryImage,
    pub skeleton: BinaryImage,
    pub refined_fraction: f64,
    /// The spectrum collapsed to a point; the graph has a single node.
    pub degenerate: bool,
}

fn single_node(e: Complex64, phi: &ScalarField, dos: &ScalarField) -> SpectralMultigraph {
    let w = phi.window;
    let (r, c) = w.to_pixel(e);
    let n = w.resolution as f64 - 1.0;
    let (r, c) = (r.round().clamp(0.0, n) as usize, c.round().clamp(0.0, n) as usize);
    SpectralMultigraph {
        nodes: vec![GraphNode { id: 0, pos: [e.re, e.im], dos: dos.get(r, c), potential: phi.get(r, c) }],
        edges: Vec::new(),
    }
}

/// Runs the full pipeline, keeping every intermediate product.
pub fn extract(poly: &LaurentCharPoly, config: &ExtractionConfig) -> Result<Extraction, ExtractError> {
    let fail = |stage, msg: &dyn fmt::Display| ExtractError::new(poly, stage, msg);
    let (window, spectrum_point) = match config.window {
        Some(w) => {
            let w = w.with_resolution(config.resolution);
            w.validate().map_err(|e| fail(Stage::Window, &e))?;
            (w, None)
        }
        None => {
            let est = estimate_window_detailed(poly, config.cells, config.pad, config.resolution)
                .map_err(|e| fail(Stage::Window, &e))?;
            let point = est.degenerate.then(|| est.spectrum.first().copied()).flatten();
            (est.window, point)
        }
    };
    let opts = AdaptiveOptions {
        base_res: config.resolution,
        m: config.refine,
        threshold: config.threshold,
        mirror: config.mirror,
    };
    let out = match adaptive_dos(poly, &window, &opts) {
        Ok(out) => out,
        Err(FieldError::EmptySpectrum { coarse_phi, coarse_dos }) => {
            let graph = match spectrum_point {
                Some(e) => single_node(e, &coarse_phi, &coarse_dos),
                None => SpectralMultigraph::default(),
            };
            let empty = BinaryImage::empty(coarse_dos.window);
            return Ok(Extraction {
                graph,
                window,
                phi: *coarse_phi,
                dos: *coarse_dos,
                binary: empty.clone(),
                skeleton: empty,
                refined_fraction: 0.0,
                degenerate: true,
            });
        }
        Err(e) => return Err(fail(Stage::Field, &e)),
    };
    let refined_fraction = out.plan.refined_fraction();
    if let Some(e) = spectrum_point {
        // a point spectrum leaves only discretisation noise around the pole
        let graph = single_node(e, &out.phi, &out.dos);
        let skeleton = BinaryImage::empty(out.binary.window);
        return Ok(Extraction {
            graph,
            window,
            phi: out.phi,
            dos: out.dos,
            binary: out.binary,
            skeleton,
            refined_fraction,
            degenerate: true,
        });
    }
    let skeleton = skeletonize(&out.binary);
    if !skeleton.is_subset_of(&out.binary) {
        return Err(fail(Stage::Skeleton, &"skeleton escaped the binary mask"));
    }
    let roles = classify_pixels(&skeleton);
    let pixel_graph = trace_edges(&skeleton, &roles);
    let raw = to_energy_coords(&pixel_graph, &out.phi, &out.dos);
    let post = PostProcess { merge_tol_px: config.merge_tol_px, short_edge_px: config.short_edge_for(poly) };
    let graph = merge_nearby_nodes(&raw, post, window.pitch());
    Ok(Extraction {
        graph,
        window,
        phi: out.phi,
        dos: out.dos,
        binary: out.binary,
        skeleton,
        refined_fraction,
        degenerate: false,
    })
}

/// The spectral graph of `poly`.
pub fn spectral_graph(poly: &LaurentCharPoly, config: &ExtractionConfig) -> Result<SpectralMultigraph, ExtractError> {
    extract(poly, config).map(|x| x.graph)
}

//! Serialization and rendering: JSON graph documents, GraphML, PNG, CSV and
//! raw float grids.

mod graphml;
mod raw;
mod render;

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::field::EnergyWindow;
use crate::graph::{Extraction, ExtractionConfig, GraphEdge, GraphNode, SpectralMultigraph};

pub use graphml::export_graphml;
pub use raw::{read_field_dump, spectrum_csv, write_field_dump, FIELD_MAGIC};
pub use render::{render_binary, render_field, render_graph, Style};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version `{0}` (expected {SCHEMA_VERSION})")]
    Schema(String),
    #[error("PNG encoding failed: {0}")]
    Png(#[from] png::EncodingError),
    #[error("CSV encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("unsupported style `{0}` (expected potential, dos, binary or graph)")]
    UnknownStyle(String),
    #[error("malformed field dump: {0}")]
    Format(String),
}

/// Reads `null` as NaN; JSON has no encoding for non-finite numbers.
pub(crate) fn f64_or_nan<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    #[serde(flatten)]
    pub edge: GraphEdge,
    /// Number of entries in `pts`.
    pub point_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub refined_fraction: f64,
}

/// Self-describing graph file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema_version: String,
    pub polynomial: String,
    pub config: ExtractionConfig,
    pub window: EnergyWindow,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<EdgeRecord>,
    pub stats: GraphStats,
}

impl GraphDocument {
    pub fn new(
        polynomial: impl Into<String>,
        config: &ExtractionConfig,
        window: EnergyWindow,
        graph: &SpectralMultigraph,
        refined_fraction: f64,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            polynomial: polynomial.into(),
            config: config.clone(),
            window,
            nodes: graph.nodes.clone(),
            edges: graph.edges.iter().map(|e| EdgeRecord { edge: e.clone(), point_count: e.pts.len() }).collect(),
            stats: GraphStats {
                node_count: graph.node_count(),
                edge_count: graph.edge_count(),
                component_count: graph.component_count(),
                refined_fraction,
            },
        }
    }

    pub fn from_extraction(polynomial: impl Into<String>, config: &ExtractionConfig, x: &Extraction) -> Self {
        Self::new(polynomial, config, x.window, &x.graph, x.refined_fraction)
    }

    pub fn graph(&self) -> SpectralMultigraph {
        SpectralMultigraph { nodes: self.nodes.clone(), edges: self.edges.iter().map(|r| r.edge.clone()).collect() }
    }

    /// Sorted keys, shortest round-trip floats, two-space indentation.
    pub fn to_json(&self) -> Result<String, IoError> {
        // `Value` objects are ordered maps, which sorts every key
        let value = serde_json::to_value(self)?;
        let mut out = serde_json::to_string_pretty(&value)?;
        out.push('\n');
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(IoError::Schema(doc.schema_version));
        }
        Ok(doc)
    }
}

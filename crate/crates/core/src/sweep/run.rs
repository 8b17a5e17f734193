use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ParamPolyTemplate, SweepError, SweepSpec};
use crate::graph::{extract, ExtractError, SpectralMultigraph, Stage};
use crate::io::{write_atomic, GraphDocument, IoError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// Extraction succeeded but found no edges (e.g. a point spectrum).
    Empty,
    Error,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Empty => "empty",
            RowStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub index: usize,
    pub params: BTreeMap<String, Complex64>,
    pub class_key: Option<String>,
    pub result: Result<GraphDocument, ExtractError>,
}

impl SweepRow {
    pub fn status(&self) -> RowStatus {
        match &self.result {
            Err(_) => RowStatus::Error,
            Ok(doc) if doc.edges.is_empty() => RowStatus::Empty,
            Ok(_) => RowStatus::Ok,
        }
    }

    pub fn file_name(&self) -> String {
        format!("graph_{:05}.json", self.index)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
}

impl SweepOutcome {
    /// One entry per row; failed rows give `None`.
    pub fn graphs(&self) -> Vec<Option<SpectralMultigraph>> {
        self.rows.iter().map(|r| r.result.as_ref().ok().map(GraphDocument::graph)).collect()
    }
}

fn run_row(
    template: &ParamPolyTemplate,
    spec: &SweepSpec,
    index: usize,
    params: BTreeMap<String, Complex64>,
) -> SweepRow {
    let poly = match template.bind(&params) {
        Ok(p) => p,
        Err(e) => {
            return SweepRow {
                index,
                params,
                class_key: None,
                result: Err(ExtractError::new(template, Stage::Parse, e)),
            }
        }
    };
    let class_key = Some(poly.class_signature().canonical_key);
    let result = extract(&poly, &spec.extraction)
        .map(|x| GraphDocument::from_extraction(poly.to_string(), &spec.extraction, &x));
    SweepRow { index, params, class_key, result }
}

/// Extracts every binding of `spec` on a pool of `jobs` workers (all cores
/// when `None`). Rows fail independently; results keep input order.
/// `progress` receives (completed, total) after each row.
pub fn run_sweep(
    template: &ParamPolyTemplate,
    spec: &SweepSpec,
    jobs: Option<usize>,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<SweepOutcome, SweepError> {
    spec.validate(template)?;
    let bindings = spec.bindings();
    let total = bindings.len();
    let done = AtomicUsize::new(0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build()?;
    let rows = pool.install(|| {
        bindings
            .into_par_iter()
            .enumerate()
            .map(|(index, params)| {
                let row = run_row(template, spec, index, params);
                let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(f) = progress {
                    f(k, total);
                }
                row
            })
            .collect()
    });
    Ok(SweepOutcome { rows })
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        z.re.to_string()
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

/// Writes `graph_NNNNN.json` for every successful row and `manifest.csv`
/// (row, parameters in sorted order, class_key, status, message).
pub fn write_sweep(outcome: &SweepOutcome, dir: &Path) -> Result<(), IoError> {
    std::fs::create_dir_all(dir)?;
    for row in &outcome.rows {
        if let Ok(doc) = &row.result {
            write_atomic(&dir.join(row.file_name()), doc.to_json()?.as_bytes())?;
        }
    }
    let names: Vec<String> = outcome.rows.first().map(|r| r.params.keys().cloned().collect()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["row".to_string()];
    header.extend(names.iter().cloned());
    header.extend(["class_key", "status", "message"].map(String::from));
    w.write_record(&header)?;
    for row in &outcome.rows {
        let mut rec = vec![row.index.to_string()];
        rec.extend(names.iter().map(|n| format_complex(row.params[n])));
        rec.push(row.class_key.clone().unwrap_or_default());
        rec.push(row.status().as_str().to_string());
        rec.push(row.result.as_ref().err().map(|e| e.to_string()).unwrap_or_default());
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    write_atomic(&dir.join("manifest.csv"), &bytes)
}

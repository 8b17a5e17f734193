//! Parametrized templates, coefficient grids, class enumeration and
//! parallel sweeps.

mod classes;
mod config;
mod run;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::io::IoError;
use crate::poly::{parse_param_poly, LaurentCharPoly, ParamPoly, PolyError};

pub use classes::{enumerate_classes, ClassEnumSpec, DedupKey, EnumeratedClass};
pub use config::{ComplexValue, ParamAxisConfig, SweepConfig};
pub use run::{run_sweep, write_sweep, RowStatus, SweepOutcome, SweepRow};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("template: {0}")]
    Template(#[from] PolyError),
    #[error("parameters: {0}")]
    Params(String),
    #[error("config: {0}")]
    Config(String),
    #[error("config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// A polynomial whose coefficients reference named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPolyTemplate {
    text: String,
    poly: ParamPoly,
    params: BTreeSet<String>,
}

impl ParamPolyTemplate {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let poly = parse_param_poly(text)?;
        let params = poly.params();
        Ok(Self { text: text.to_string(), poly, params })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn params(&self) -> &BTreeSet<String> {
        &self.params
    }

    /// Substitutes exactly the template's parameters.
    pub fn bind(&self, values: &BTreeMap<String, Complex64>) -> Result<LaurentCharPoly, PolyError> {
        if let Some(extra) = values.keys().find(|k| !self.params.contains(*k)) {
            return Err(PolyError::ExtraParameter(extra.clone()));
        }
        if let Some(missing) = self.params.iter().find(|k| !values.contains_key(*k)) {
            return Err(PolyError::MissingParameter(missing.clone()));
        }
        let map: HashMap<String, Complex64> = values.iter().map(|(k, v)| (k.clone(), *v)).collect();
        LaurentCharPoly::from_bilaurent(&self.poly.bind(&map)?)
    }
}

impl fmt::Display for ParamPolyTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `n` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|k| start + k as f64 * step).collect();
            v[n - 1] = stop;
            v
        }
    }
}

/// All `re + i im`, real part outermost.
pub fn coefficient_grid(re_values: &[f64], im_values: &[f64]) -> Vec<Complex64> {
    re_values.iter().flat_map(|&re| im_values.iter().map(move |&im| Complex64::new(re, im))).collect()
}

/// 13 real values in [-10, 10] times 7 imaginary values in [-5, 5].
pub fn default_coefficient_grid() -> Vec<Complex64> {
    coefficient_grid(&linspace(-10.0, 10.0, 13), &linspace(-5.0, 5.0, 7))
}

/// Order in which the parameter product is flattened.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    /// Row-major over the axes as listed: the last axis varies fastest.
    #[default]
    Ij,
    /// Like `numpy.meshgrid(..., indexing="xy")`: the first two axes are
    /// swapped, so the first axis varies fastest among them.
    Xy,
}

/// Parameter axes plus the extraction settings used for every row.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<(String, Vec<Complex64>)>,
    pub indexing: Indexing,
    pub extraction: crate::graph::ExtractionConfig,
}

impl SweepSpec {
    pub fn len(&self) -> usize {
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks that the axes name exactly the template's parameters.
    pub fn validate(&self, template: &ParamPolyTemplate) -> Result<(), SweepError> {
        let mut seen = BTreeSet::new();
        for (name, values) in &self.axes {
            if !seen.insert(name.clone()) {
                return Err(SweepError::Params(format!("parameter `{name}` listed twice")));
            }
            if values.is_empty() {
                return Err(SweepError::Params(format!("parameter `{name}` has no values")));
            }
            if !template.params().contains(name) {
                return Err(SweepError::Params(format!("`{name}` does not appear in the template")));
            }
        }
        if let Some(missing) = template.params().iter().find(|p| !seen.contains(*p)) {
            return Err(SweepError::Params(format!("no values given for `{missing}`")));
        }
        Ok(())
    }

    /// Parameter bindings in output order.
    pub fn bindings(&self) -> Vec<BTreeMap<String, Complex64>> {
        let mut order: Vec<usize> = (0..self.axes.len()).collect();
        if self.indexing == Indexing::Xy && order.len() >= 2 {
            order.swap(0, 1);
        }
        let dims: Vec<usize> = order.iter().map(|&a| self.axes[a].1.len()).collect();
        let total: usize = dims.iter().product();
        (0..total)
            .map(|mut flat| {
                let mut idx = vec![0; dims.len()];
                for k in (0..dims.len()).rev() {
                    idx[k] = flat % dims[k];
                    flat /= dims[k];
                }
                order.iter().zip(idx).map(|(&a, i)| (self.axes[a].0.clone(), self.axes[a].1[i])).collect()
            })
            .collect()
    }
}

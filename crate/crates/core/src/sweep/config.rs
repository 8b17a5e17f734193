use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{coefficient_grid, linspace, Indexing, ParamPolyTemplate, SweepError, SweepSpec};
use crate::graph::ExtractionConfig;

/// A real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Real(re) => Complex64::new(re, 0.0),
            ComplexValue::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    /// `[start, stop, count]` of the real parts.
    pub re: (f64, f64, usize),
    /// `[start, stop, count]` of the imaginary parts.
    pub im: (f64, f64, usize),
}

/// One `[[param]]` table: a name and exactly one of `values`, `linspace`
/// or `grid`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamAxisConfig {
    pub name: String,
    pub values: Option<Vec<ComplexValue>>,
    /// `[start, stop, count]` along the real axis.
    pub linspace: Option<(f64, f64, usize)>,
    pub grid: Option<GridAxis>,
}

impl ParamAxisConfig {
    fn values(&self) -> Result<Vec<Complex64>, SweepError> {
        match (&self.values, &self.linspace, &self.grid) {
            (Some(v), None, None) => Ok(v.iter().map(|&x| x.into()).collect()),
            (None, Some((a, b, n)), None) => {
                Ok(linspace(*a, *b, *n).into_iter().map(|x| Complex64::new(x, 0.0)).collect())
            }
            (None, None, Some(g)) => {
                Ok(coefficient_grid(&linspace(g.re.0, g.re.1, g.re.2), &linspace(g.im.0, g.im.1, g.im.2)))
            }
            _ => Err(SweepError::Config(format!(
                "parameter `{}` needs exactly one of values, linspace or grid",
                self.name
            ))),
        }
    }
}

/// Declarative sweep description, read from TOML:
///
/// ```toml
/// template = "z**2 + a/z**2 + b*E*z - E**4"
/// out = "runs/grid"
/// jobs = 4
/// indexing = "xy"
///
/// [[param]]
/// name = "a"
/// linspace = [-2.0, 1.0, 6]
///
/// [[param]]
/// name = "b"
/// values = [-1.0, [0.0, 0.5], 1.0]
///
/// [extraction]
/// resolution = 256
/// refine = 4
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub template: String,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    #[serde(default)]
    pub indexing: Indexing,
    #[serde(default, rename = "param")]
    pub params: Vec<ParamAxisConfig>,
    #[serde(default)]
    pub extraction: ExtractionConfig,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, SweepError> {
        Ok(toml::from_str(text)?)
    }

    /// Parsed template and validated spec.
    pub fn resolve(&self) -> Result<(ParamPolyTemplate, SweepSpec), SweepError> {
        let template = ParamPolyTemplate::parse(&self.template)?;
        let axes =
            self.params.iter().map(|p| Ok((p.name.clone(), p.values()?))).collect::<Result<Vec<_>, SweepError>>()?;
        let spec = SweepSpec { axes, indexing: self.indexing, extraction: self.extraction.clone() };
        spec.validate(&template)?;
        Ok((template, spec))
    }
}

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::{Bindings, Model, Param};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Validation(format!(
                "unknown output format `{other}` (valid: csv, json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(param: Param, start: f64, stop: f64, points: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::NonFinite(format!("bounds of axis `{param}`")));
        }
        if points < 2 {
            return Err(Error::Validation(format!(
                "axis `{param}` needs at least 2 points, got {points}"
            )));
        }
        Ok(Self {
            param,
            start,
            stop,
            points,
        })
    }

    /// Evenly spaced values; both endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

/// A validated sweep: one model over a 1- or 2-axis grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: Model,
    pub axes: Vec<Axis>,
    pub fixed: Vec<(Param, f64)>,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn new(model: Model, axes: Vec<Axis>, fixed: Vec<(Param, f64)>) -> Result<Self> {
        let spec = Self {
            model,
            axes,
            fixed,
            output_path: None,
            format: OutputFormat::Csv,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Validation(format!(
                "a sweep needs 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for a in &self.axes {
            Axis::new(a.param, a.start, a.stop, a.points)?;
        }
        let mut probe = self.fixed_bindings()?;
        for a in &self.axes {
            probe.bind(a.param, a.start)?;
        }
        self.model.check(&probe)
    }

    fn fixed_bindings(&self) -> Result<Bindings> {
        let mut b = Bindings::default();
        for &(p, v) in &self.fixed {
            b.bind(p, v)?;
        }
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in row-major order (first axis slowest).
    pub fn grid(&self) -> Result<Vec<Bindings>> {
        self.validate()?;
        let base = self.fixed_bindings()?;
        let values: Vec<Vec<f64>> = self.axes.iter().map(Axis::values).collect();
        let mut out = Vec::with_capacity(self.len());
        for idx in 0..self.len() {
            let mut b = base;
            let mut rest = idx;
            for (axis, vals) in self.axes.iter().zip(&values).rev() {
                b.set(axis.param, vals[rest % axis.points]);
                rest /= axis.points;
            }
            out.push(b);
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::Validation(format!("config: {e}")))?;
        cfg.into_spec()
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_config(&self) -> SweepConfig {
        SweepConfig {
            model: self.model.name().to_string(),
            axes: self
                .axes
                .iter()
                .map(|a| AxisConfig {
                    param: a.param.name().to_string(),
                    start: a.start,
                    stop: a.stop,
                    points: a.points,
                })
                .collect(),
            fixed: self
                .fixed
                .iter()
                .map(|&(p, v)| (p.name().to_string(), v))
                .collect(),
            output_path: self.output_path.clone(),
            format: Some(match self.format {
                OutputFormat::Csv => "csv".into(),
                OutputFormat::Json => "json".into(),
            }),
        }
    }
}

/// On-disk JSON form of a [`SweepSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: String,
    pub axes: Vec<AxisConfig>,
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepConfig {
    pub fn into_spec(self) -> Result<SweepSpec> {
        let model: Model = self.model.parse()?;
        let axes = self
            .axes
            .iter()
            .map(|a| Axis::new(a.param.parse()?, a.start, a.stop, a.points))
            .collect::<Result<Vec<_>>>()?;
        let fixed = self
            .fixed
            .iter()
            .map(|(k, &v)| Ok((k.parse::<Param>()?, v)))
            .collect::<Result<Vec<_>>>()?;
        let format = match &self.format {
            Some(f) => f.parse()?,
            None => OutputFormat::Csv,
        };
        let spec = SweepSpec {
            model,
            axes,
            fixed,
            output_path: self.output_path,
            format,
        };
        spec.validate()?;
        Ok(spec)
    }
}

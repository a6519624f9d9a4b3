//! Parameter sweeps: grid construction, parallel evaluation in a
//! deterministic order, CSV/JSON output and the named figure presets.

mod model;
mod output;
mod presets;
mod spec;

use num_complex::Complex;
use rayon::prelude::*;

pub use model::{Bindings, Model, Param};
pub use output::{format_float, write_csv, write_json, CSV_HEADER};
pub use presets::{figure_preset, Preset, PRESET_IDS};
pub use spec::{linspace, Axis, AxisConfig, OutputFormat, SweepConfig, SweepSpec};

use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "VISIBILITY_THREADS";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub model: Model,
    pub params: Bindings,
    pub kappa: Complex<f64>,
    pub visibility: f64,
}

impl SweepRecord {
    pub fn evaluate(model: Model, params: Bindings) -> Result<Self> {
        let kappa = model.evaluate(&params)?;
        let visibility = kappa.norm();
        if !visibility.is_finite() {
            return Err(Error::NonFinite(format!("{model} visibility")));
        }
        Ok(Self {
            model,
            params,
            kappa,
            visibility,
        })
    }
}

/// Worker count: `VISIBILITY_THREADS` if set, else available parallelism.
pub fn worker_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Validation(format!(
                "{THREADS_ENV} must be a positive integer, got `{raw}`"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Evaluates every grid point of `spec` in row-major order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    run_sweeps(std::slice::from_ref(spec))
}

/// Evaluates several specs back to back; records are concatenated in order.
pub fn run_sweeps(specs: &[SweepSpec]) -> Result<Vec<SweepRecord>> {
    run_sweeps_with_workers(specs, worker_count()?)
}

pub fn run_sweeps_with_workers(specs: &[SweepSpec], workers: usize) -> Result<Vec<SweepRecord>> {
    let mut jobs = Vec::new();
    for spec in specs {
        jobs.extend(spec.grid()?.into_iter().map(|b| (spec.model, b)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<SweepRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(m, b)| SweepRecord::evaluate(m, b))
            .collect()
    });
    // first failure in grid order, regardless of which worker hit it
    results.into_iter().collect()
}

//! Named sweeps regenerating the data behind each figure. A preset may hold
//! several panels; their records are concatenated in panel order.

use super::model::{Model, Param};
use super::spec::{Axis, SweepSpec};
use crate::channels::ChannelKind;
use crate::error::{Error, Result};

pub const PRESET_IDS: [&str; 11] = [
    "jc-fringes",
    "jc-omega",
    "jc-thermal",
    "ad-fringes",
    "ad-asymmetry",
    "pd-fringes",
    "pd-symmetry",
    "dp-fringes",
    "dp-grid",
    "compare-lambda",
    "compare-dtau-de",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: &'static str,
    pub panels: Vec<SweepSpec>,
}

const AD: Model = Model::Channel(ChannelKind::AmplitudeDamping);
const PD: Model = Model::Channel(ChannelKind::PhaseDamping);
const DP: Model = Model::Channel(ChannelKind::Depolarizing);

fn axis(p: Param, start: f64, stop: f64, points: usize) -> Axis {
    Axis {
        param: p,
        start,
        stop,
        points,
    }
}

fn panel(model: Model, axes: Vec<Axis>, fixed: &[(Param, f64)]) -> Result<SweepSpec> {
    SweepSpec::new(model, axes, fixed.to_vec())
}

/// `ΔE × λ` fringe maps at several `Δτ`.
fn fringes(model: Model, lambda_max: f64, extra: &[(Param, f64)]) -> Result<Vec<SweepSpec>> {
    [0.5, 1.0, 2.0, 5.0]
        .iter()
        .map(|&dt| {
            let mut fixed = vec![(Param::DeltaTau, dt)];
            fixed.extend_from_slice(extra);
            panel(
                model,
                vec![
                    axis(Param::DeltaE, 0.0, 5.0, 81),
                    axis(Param::Lambda1, 0.0, lambda_max, 81),
                ],
                &fixed,
            )
        })
        .collect()
}

/// `p1 × p2` maps with `τ1 = 1` and several `τ2`.
fn probability_grid(model: Model) -> Result<Vec<SweepSpec>> {
    [1.0, 2.0, 5.0]
        .iter()
        .map(|&tau2| {
            panel(
                model,
                vec![axis(Param::P1, 0.0, 1.0, 51), axis(Param::P2, 0.0, 1.0, 51)],
                &[
                    (Param::DeltaE, 1.0),
                    (Param::Tau1, 1.0),
                    (Param::Tau2, tau2),
                ],
            )
        })
        .collect()
}

pub fn figure_preset(id: &str) -> Result<Preset> {
    let (id, panels) = match id {
        "jc-fringes" => (
            "jc-fringes",
            fringes(Model::Jc, 3.0, &[(Param::Omega, 1.1)])?,
        ),
        "jc-omega" => (
            "jc-omega",
            [0.5, 0.9, 1.0, 1.1, 2.0]
                .iter()
                .map(|&w| {
                    panel(
                        Model::Jc,
                        vec![axis(Param::Lambda1, 0.0, 3.0, 301)],
                        &[
                            (Param::DeltaE, 1.0),
                            (Param::Omega, w),
                            (Param::DeltaTau, 1.0),
                        ],
                    )
                })
                .collect::<Result<_>>()?,
        ),
        "jc-thermal" => {
            let mut panels = Vec::new();
            for t in [1.0, 10.0] {
                panels.push(panel(
                    Model::JcThermal,
                    vec![
                        axis(Param::DeltaE, 0.0, 5.0, 51),
                        axis(Param::Lambda1, 0.0, 3.0, 51),
                    ],
                    &[
                        (Param::Omega, 1.1),
                        (Param::DeltaTau, 1.0),
                        (Param::Temperature, t),
                    ],
                )?);
                panels.push(panel(
                    Model::JcThermal,
                    vec![
                        axis(Param::Omega, 0.1, 5.0, 50),
                        axis(Param::Lambda1, 0.0, 3.0, 51),
                    ],
                    &[
                        (Param::DeltaE, 1.0),
                        (Param::DeltaTau, 1.0),
                        (Param::Temperature, t),
                    ],
                )?);
            }
            ("jc-thermal", panels)
        }
        "ad-fringes" => ("ad-fringes", fringes(AD, 2.0, &[])?),
        "ad-asymmetry" => ("ad-asymmetry", probability_grid(AD)?),
        "pd-fringes" => ("pd-fringes", fringes(PD, 2.0, &[])?),
        "pd-symmetry" => ("pd-symmetry", probability_grid(PD)?),
        "dp-fringes" => ("dp-fringes", fringes(DP, 0.5, &[])?),
        "dp-grid" => ("dp-grid", probability_grid(DP)?),
        "compare-lambda" => {
            let lambda = || vec![axis(Param::Lambda1, 0.0, 1.5, 151)];
            let base = [(Param::DeltaE, 1.0), (Param::DeltaTau, 1.0)];
            let mut jc = base.to_vec();
            jc.push((Param::Omega, 1.1));
            (
                "compare-lambda",
                vec![
                    panel(Model::Noiseless, lambda(), &base)?,
                    panel(Model::Jc, lambda(), &jc)?,
                    panel(AD, lambda(), &base)?,
                    panel(PD, lambda(), &base)?,
                    panel(DP, lambda(), &base)?,
                ],
            )
        }
        "compare-dtau-de" => {
            let mut panels = Vec::new();
            let series: [(Model, [f64; 3]); 4] = [
                (Model::Jc, [0.5, 1.0, 2.0]),
                (AD, [0.1, 0.5, 1.0]),
                (PD, [0.1, 0.5, 1.0]),
                (DP, [0.01, 0.05, 0.1]),
            ];
            for (model, lambdas) in series {
                let field: &[(Param, f64)] = if model == Model::Jc {
                    &[(Param::Omega, 1.1)]
                } else {
                    &[]
                };
                for l in lambdas {
                    let mut fixed = vec![(Param::DeltaE, 1.0), (Param::Lambda1, l)];
                    fixed.extend_from_slice(field);
                    panels.push(panel(
                        model,
                        vec![axis(Param::DeltaTau, 0.0, 10.0, 201)],
                        &fixed,
                    )?);
                }
                for l in lambdas {
                    let mut fixed = vec![(Param::DeltaTau, 1.0), (Param::Lambda1, l)];
                    fixed.extend_from_slice(field);
                    panels.push(panel(
                        model,
                        vec![axis(Param::DeltaE, 0.0, 10.0, 201)],
                        &fixed,
                    )?);
                }
            }
            ("compare-dtau-de", panels)
        }
        other => {
            return Err(Error::Validation(format!(
                "unknown preset `{other}` (valid: {})",
                PRESET_IDS.join(", ")
            )))
        }
    };
    Ok(Preset { id, panels })
}

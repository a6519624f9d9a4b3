use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::channels::{
    ad_overlap_analytic, arm_coupling, pd_overlap_analytic, two_arm_visibility, ChannelKind,
};
use crate::error::{Error, Result};
use crate::interferometer::{noiseless_overlap, ArmConfig, ClockSpec};
use crate::jaynes_cummings::{
    jc_overlap_analytic, jc_thermal_overlap, AlphaBranch, JcParams, ThermalParams,
};

/// Sweepable parameter, in CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    DeltaE,
    Omega,
    Lambda1,
    Lambda2,
    DeltaTau,
    Temperature,
    P1,
    P2,
    Tau1,
    Tau2,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::DeltaE,
        Param::Omega,
        Param::Lambda1,
        Param::Lambda2,
        Param::DeltaTau,
        Param::Temperature,
        Param::P1,
        Param::P2,
        Param::Tau1,
        Param::Tau2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::DeltaE => "delta_e",
            Param::Omega => "omega",
            Param::Lambda1 => "lambda1",
            Param::Lambda2 => "lambda2",
            Param::DeltaTau => "delta_tau",
            Param::Temperature => "temperature",
            Param::P1 => "p1",
            Param::P2 => "p2",
            Param::Tau1 => "tau1",
            Param::Tau2 => "tau2",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        if key == "lambda" {
            return Ok(Param::Lambda1);
        }
        Param::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Validation(format!("unknown parameter `{s}`")))
    }
}

/// Parameter values bound for one grid point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bindings([Option<f64>; 10]);

impl Bindings {
    pub fn get(&self, p: Param) -> Option<f64> {
        self.0[p.slot()]
    }

    pub fn is_bound(&self, p: Param) -> bool {
        self.0[p.slot()].is_some()
    }

    /// Binds `p`; binding the same parameter twice is an error.
    pub fn bind(&mut self, p: Param, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("parameter `{p}`")));
        }
        if self.is_bound(p) {
            return Err(Error::Validation(format!(
                "parameter `{p}` is bound more than once"
            )));
        }
        self.0[p.slot()] = Some(value);
        Ok(())
    }

    pub fn set(&mut self, p: Param, value: f64) {
        self.0[p.slot()] = Some(value);
    }

    pub fn values(&self) -> &[Option<f64>; 10] {
        &self.0
    }

    fn require(&self, p: Param) -> Result<f64> {
        self.get(p)
            .ok_or_else(|| Error::Validation(format!("parameter `{p}` is unbound")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Noiseless,
    Jc,
    JcThermal,
    Channel(ChannelKind),
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Noiseless,
        Model::Jc,
        Model::JcThermal,
        Model::Channel(ChannelKind::AmplitudeDamping),
        Model::Channel(ChannelKind::PhaseDamping),
        Model::Channel(ChannelKind::Depolarizing),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Noiseless => "noiseless",
            Model::Jc => "jc",
            Model::JcThermal => "jc_thermal",
            Model::Channel(kind) => kind.short_name(),
        }
    }

    /// Checks that every parameter the model needs is bound and nothing else.
    pub fn check(self, b: &Bindings) -> Result<()> {
        use Param::*;
        let (required, optional): (Vec<Param>, Vec<Param>) = match self {
            Model::Noiseless => (vec![DeltaE, DeltaTau], vec![Lambda1]),
            Model::Jc => (vec![DeltaE, Omega, Lambda1, DeltaTau], vec![]),
            Model::JcThermal => (vec![DeltaE, Omega, Lambda1, DeltaTau, Temperature], vec![]),
            Model::Channel(_) => {
                if b.is_bound(P1) || b.is_bound(P2) {
                    (vec![DeltaE, P1, P2, Tau1, Tau2], vec![])
                } else if b.is_bound(Tau1) || b.is_bound(Tau2) {
                    (vec![DeltaE, Lambda1, Tau1, Tau2], vec![Lambda2])
                } else {
                    (vec![DeltaE, Lambda1, DeltaTau], vec![Lambda2])
                }
            }
        };
        for p in Param::ALL {
            if b.is_bound(p) && !required.contains(&p) && !optional.contains(&p) {
                return Err(Error::Validation(format!(
                    "parameter `{p}` is not used by model `{self}` with this binding"
                )));
            }
        }
        for p in required {
            b.require(p).map_err(|_| {
                Error::Validation(format!(
                    "model `{self}` requires parameter `{p}`, which is unbound"
                ))
            })?;
        }
        Ok(())
    }

    /// Complex overlap κ at one parameter point.
    pub fn evaluate(self, b: &Bindings) -> Result<Complex<f64>> {
        self.check(b)?;
        let de = b.require(Param::DeltaE)?;
        match self {
            Model::Noiseless => Ok(noiseless_overlap(
                &ClockSpec::with_gap(de)?,
                b.require(Param::DeltaTau)?,
            )),
            Model::Jc | Model::JcThermal => {
                let params =
                    JcParams::new(de, b.require(Param::Omega)?, b.require(Param::Lambda1)?, 1)?;
                let dt = b.require(Param::DeltaTau)?;
                if self == Model::Jc {
                    Ok(jc_overlap_analytic(&params, dt, AlphaBranch::Principal))
                } else {
                    let thermal = ThermalParams::new(b.require(Param::Temperature)?)?;
                    jc_thermal_overlap(&params, &thermal, dt, AlphaBranch::Principal)
                }
            }
            Model::Channel(kind) => channel_overlap(kind, de, b),
        }
    }
}

fn channel_overlap(kind: ChannelKind, de: f64, b: &Bindings) -> Result<Complex<f64>> {
    let clock = ClockSpec::with_gap(de)?;
    let (lambda1, lambda2, tau1, tau2) =
        if let (Some(p1), Some(p2)) = (b.get(Param::P1), b.get(Param::P2)) {
            let (t1, t2) = (b.require(Param::Tau1)?, b.require(Param::Tau2)?);
            (arm_coupling(p1, t1)?, arm_coupling(p2, t2)?, t1, t2)
        } else {
            let l1 = b.require(Param::Lambda1)?;
            let l2 = b.get(Param::Lambda2).unwrap_or(l1);
            match b.get(Param::DeltaTau) {
                Some(dt) if dt < 0.0 => (l1, l2, -dt, 0.0),
                Some(dt) => (l1, l2, 0.0, dt),
                None => (l1, l2, b.require(Param::Tau1)?, b.require(Param::Tau2)?),
            }
        };
    let arm1 = ArmConfig::with_coupling(tau1, lambda1)?;
    let arm2 = ArmConfig::with_coupling(tau2, lambda2)?;
    if lambda1 == lambda2 {
        match kind {
            ChannelKind::AmplitudeDamping => {
                return Ok(ad_overlap_analytic(&clock, lambda1, tau1, tau2))
            }
            ChannelKind::PhaseDamping => {
                return Ok(pd_overlap_analytic(&clock, lambda1, tau1, tau2))
            }
            ChannelKind::Depolarizing => {}
        }
    }
    Ok(two_arm_visibility(&clock, kind, &arm1, &arm2)?.kappa)
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Model::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| {
                let valid: Vec<&str> = Model::ALL.iter().map(|m| m.name()).collect();
                Error::Validation(format!("unknown model `{s}` (valid: {})", valid.join(", ")))
            })
    }
}

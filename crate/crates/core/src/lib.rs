//! Interference visibility of a two-level clock carried through a
//! Mach–Zehnder interferometer whose arms have different proper times, with
//! the clock optionally coupled to a cavity mode or to a dilated noise
//! channel.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the sweep engine and CLI use.

pub mod channels;
pub mod error;
pub mod interferometer;
pub mod jaynes_cummings;
pub mod numerics;
pub mod oracle;
pub mod scalar;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix = numerics::ComplexMatrix<f64>;
pub type State = numerics::StateVector<f64>;
pub type Spectrum = numerics::Spectrum<f64>;
pub type Clock = interferometer::ClockSpec<f64>;
pub type Arm = interferometer::ArmConfig<f64>;
pub type Visibility = interferometer::VisibilityResult<f64>;
pub type Jc = jaynes_cummings::JcParams<f64>;
pub type Thermal = jaynes_cummings::ThermalParams<f64>;
pub type Channel = channels::ChannelParams<f64>;
pub type Job = oracle::OracleJob<f64>;

/// Single-precision variants.
pub mod f32 {
    pub type Matrix = crate::numerics::ComplexMatrix<f32>;
    pub type State = crate::numerics::StateVector<f32>;
    pub type Clock = crate::interferometer::ClockSpec<f32>;
    pub type Jc = crate::jaynes_cummings::JcParams<f32>;
}

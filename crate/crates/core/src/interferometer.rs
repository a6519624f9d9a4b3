//! Mach–Zehnder interferometer with a two-level clock: overlap visibility,
//! detector probabilities, phase-scan visibility and proper-time helpers.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{inner_product, ComplexMatrix, StateVector};
use crate::scalar::Real;

/// Two-level clock: energies and initial amplitudes of `|0>` and `|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockSpec<T> {
    pub e0: T,
    pub e1: T,
    pub c0: Complex<T>,
    pub c1: Complex<T>,
}

impl<T: Real> ClockSpec<T> {
    pub fn new(e0: T, e1: T, c0: Complex<T>, c1: Complex<T>) -> Result<Self> {
        let clock = Self { e0, e1, c0, c1 };
        clock.validate()?;
        Ok(clock)
    }

    /// Clock prepared in `(|0> + |1>)/√2`.
    pub fn balanced(e0: T, e1: T) -> Result<Self> {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self::new(e0, e1, h, h)
    }

    /// Balanced clock with `E0 = 0`, `E1 = ΔE`.
    pub fn with_gap(delta_e: T) -> Result<Self> {
        Self::balanced(T::zero(), delta_e)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.e0, self.e1, self.c0.re, self.c0.im, self.c1.re, self.c1.im,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite("clock specification".into()));
        }
        if self.e1 < self.e0 {
            return Err(Error::Validation(format!(
                "clock gap must be non-negative (E0 = {}, E1 = {})",
                self.e0, self.e1
            )));
        }
        let norm_sqr = self.c0.norm_sqr() + self.c1.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::structural_tolerance() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn delta_e(&self) -> T {
        self.e1 - self.e0
    }

    /// `(|c0|², |c1|²)`.
    pub fn populations(&self) -> (T, T) {
        (self.c0.norm_sqr(), self.c1.norm_sqr())
    }

    /// `H0 = diag(E0, E1)`.
    pub fn hamiltonian(&self) -> ComplexMatrix<T> {
        ComplexMatrix::diagonal(&[self.e0, self.e1])
    }

    /// `H0 ⊗ I_env`.
    pub fn extended_hamiltonian(&self, env_dim: usize) -> ComplexMatrix<T> {
        self.hamiltonian().kron(&ComplexMatrix::identity(env_dim))
    }

    /// `|ψ_clock> ⊗ |env_level>`.
    pub fn product_state(&self, env_dim: usize, env_level: usize) -> Result<StateVector<T>> {
        if env_level >= env_dim {
            return Err(Error::DimensionMismatch {
                expected: env_dim,
                found: env_level + 1,
            });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 2 * env_dim];
        amps[env_level] = self.c0;
        amps[env_dim + env_level] = self.c1;
        StateVector::new(amps)
    }
}

/// Per-arm proper time, noise coupling and Aharonov–Bohm phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmConfig<T> {
    pub tau: T,
    pub lambda: T,
    pub phi: T,
}

impl<T: Real> ArmConfig<T> {
    pub fn new(tau: T, lambda: T, phi: T) -> Result<Self> {
        if !(tau.is_finite() && lambda.is_finite() && phi.is_finite()) {
            return Err(Error::NonFinite("arm configuration".into()));
        }
        if tau < T::zero() {
            return Err(Error::Validation(format!(
                "proper time must be non-negative, got {tau}"
            )));
        }
        Ok(Self { tau, lambda, phi })
    }

    /// Arm with zero Aharonov–Bohm phase.
    pub fn with_coupling(tau: T, lambda: T) -> Result<Self> {
        Self::new(tau, lambda, T::zero())
    }
}

/// `Δφ = φ1 − φ2`.
pub fn phase_difference<T: Real>(arm1: &ArmConfig<T>, arm2: &ArmConfig<T>) -> T {
    arm1.phi - arm2.phi
}

/// Overlap `κ = <ψ1|ψ2> = |κ| e^{iΥ}` of the two arm states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityResult<T> {
    pub kappa: Complex<T>,
    pub v: T,
    pub upsilon: T,
}

impl<T: Real> VisibilityResult<T> {
    pub fn from_kappa(kappa: Complex<T>) -> Self {
        Self {
            kappa,
            v: kappa.norm(),
            upsilon: kappa.arg(),
        }
    }
}

/// Visibility from the overlap of the two arm-evolved states.
pub fn overlap_visibility<T: Real>(
    state1: &StateVector<T>,
    state2: &StateVector<T>,
) -> Result<VisibilityResult<T>> {
    Ok(VisibilityResult::from_kappa(inner_product(state1, state2)?))
}

/// Output port of the second beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    Plus,
    Minus,
}

/// `P± = ½[1 ± |κ| sin(Δφ + χ + Υ)]`.
pub fn detection_probability<T: Real>(
    result: &VisibilityResult<T>,
    delta_phi: T,
    chi: T,
    detector: Detector,
) -> T {
    let half = T::lit(0.5);
    let plus = half * (T::one() + result.v * (delta_phi + chi + result.upsilon).sin());
    match detector {
        Detector::Plus => plus,
        Detector::Minus => T::one() - plus,
    }
}

/// Uniform `χ` grid on `[0, 2π]` with the given number of points.
pub fn chi_grid<T: Real>(points: usize) -> Vec<T> {
    let two_pi = T::TAU();
    let last = T::count(points.saturating_sub(1).max(1));
    (0..points)
        .map(|i| {
            if i + 1 == points {
                two_pi
            } else {
                two_pi * T::count(i) / last
            }
        })
        .collect()
}

/// Number of points of the 0.1° phase grid over a full period.
pub const DEFAULT_SCAN_POINTS: usize = 3601;

/// `(χ, P+)` samples over a full period of the phase shifter.
pub fn fringe_scan<T: Real>(
    result: &VisibilityResult<T>,
    delta_phi: T,
    points: usize,
) -> Vec<(T, T)> {
    chi_grid(points)
        .into_iter()
        .map(|chi| {
            (
                chi,
                detection_probability(result, delta_phi, chi, Detector::Plus),
            )
        })
        .collect()
}

/// `(max P − min P) / (max P + min P)` over a phase scan.
///
/// The scan must span a full period with spacing no wider than 0.1°.
pub fn visibility_from_scan<T: Real>(samples: &[(T, T)]) -> Result<T> {
    if samples.len() < 2 {
        return Err(Error::Validation(
            "phase scan needs at least two samples".into(),
        ));
    }
    if samples
        .iter()
        .any(|(c, p)| !c.is_finite() || !p.is_finite())
    {
        return Err(Error::NonFinite("phase scan".into()));
    }
    let mut chis: Vec<T> = samples.iter().map(|s| s.0).collect();
    chis.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let max_step = chis.windows(2).fold(T::zero(), |m, w| m.max(w[1] - w[0]));
    let allowed = T::lit(0.1).to_radians() * (T::one() + T::lit(1e-6));
    if max_step > allowed {
        return Err(Error::Validation(format!(
            "phase scan step {max_step} rad exceeds 0.1°"
        )));
    }
    let span = chis[chis.len() - 1] - chis[0];
    if span + max_step < T::TAU() * (T::one() - T::lit(1e-9)) {
        return Err(Error::Validation(format!(
            "phase scan spans {span} rad, less than a full period"
        )));
    }
    let (lo, hi) = samples
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), s| {
            (lo.min(s.1), hi.max(s.1))
        });
    if hi + lo <= T::zero() {
        return Err(Error::Validation(
            "phase scan probabilities are all zero".into(),
        ));
    }
    Ok((hi - lo) / (hi + lo))
}

/// First-order gravitational proper-time difference `g Δx t / c²`.
pub fn proper_time_difference<T: Real>(g: T, delta_x: T, t_lab: T, c: T) -> T {
    g * delta_x * t_lab / (c * c)
}

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Clock-only overlap `<ψ|e^{-iH0Δτ}|ψ>`.
pub fn noiseless_overlap<T: Real>(clock: &ClockSpec<T>, delta_tau: T) -> Complex<T> {
    let (p0, p1) = clock.populations();
    let rel = -clock.delta_e() * delta_tau;
    let inner = Complex::new(p0 + p1 * rel.cos(), p1 * rel.sin());
    let global = -clock.e0 * delta_tau;
    inner * Complex::new(global.cos(), global.sin())
}

/// `|<ψ|e^{-iH0Δτ}|ψ>|`; `|cos(ΔEΔτ/2)|` for a balanced clock.
pub fn noiseless_visibility<T: Real>(clock: &ClockSpec<T>, delta_tau: T) -> T {
    let (p0, p1) = clock.populations();
    let rel = clock.delta_e() * delta_tau;
    Complex::new(p0 + p1 * rel.cos(), -p1 * rel.sin()).norm()
}

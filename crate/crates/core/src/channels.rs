//! Unitary dilations of the amplitude-damping (qubit environment),
//! phase-damping (qutrit environment) and depolarizing (four-level
//! environment) channels, and the continuous-time Hamiltonians derived from
//! them.
//!
//! Joint basis index is `clock * env_dim + env`. Hamiltonian entries follow
//! the reference matrices exactly as written; their relation to the finite-time
//! unitaries is measured by [`effective_transition_probability`] rather than
//! assumed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::interferometer::{overlap_visibility, ArmConfig, ClockSpec, VisibilityResult};
use crate::numerics::{evolution_operator, hermitian_eig, ComplexMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
    ];

    /// Minimal environment dimension of the dilation.
    pub fn env_dim(self) -> usize {
        match self {
            ChannelKind::AmplitudeDamping => 2,
            ChannelKind::PhaseDamping => 3,
            ChannelKind::Depolarizing => 4,
        }
    }

    pub fn dim(self) -> usize {
        2 * self.env_dim()
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::Depolarizing => "dp",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ad" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "pd" | "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "dp" | "depolarizing" => Ok(ChannelKind::Depolarizing),
            other => Err(Error::Validation(format!("unknown channel kind `{other}`"))),
        }
    }
}

/// Channel with its coupling `λ = θ / τ*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams<T> {
    pub kind: ChannelKind,
    pub lambda: T,
}

impl<T: Real> ChannelParams<T> {
    pub fn new(kind: ChannelKind, lambda: T) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFinite("channel coupling".into()));
        }
        Ok(Self { kind, lambda })
    }

    /// `λ = arcsin(√p) / τ*`.
    pub fn from_probability(kind: ChannelKind, p: T, tau_star: T) -> Result<Self> {
        Self::new(kind, coupling_from_probability(p, tau_star)?)
    }
}

fn check_probability<T: Real>(p: T) -> Result<()> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Validation(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// `λ = arcsin(√p) / τ*`.
pub fn coupling_from_probability<T: Real>(p: T, tau_star: T) -> Result<T> {
    check_probability(p)?;
    if !(tau_star > T::zero() && tau_star.is_finite()) {
        return Err(Error::Validation(format!(
            "interaction time must be positive, got {tau_star}"
        )));
    }
    Ok(p.sqrt().asin() / tau_star)
}

/// Coupling for an arm whose transition probability `p` is reached after the
/// arm's own proper time. An arm with zero proper time never evolves, so its
/// coupling is irrelevant and reported as zero.
pub fn arm_coupling<T: Real>(p: T, tau: T) -> Result<T> {
    check_probability(p)?;
    if tau.is_zero() {
        return Ok(T::zero());
    }
    coupling_from_probability(p, tau)
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn im<T: Real>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

/// Finite-time dilation unitary `U(τ*)` for transition probability `p`.
pub fn finite_time_unitary<T: Real>(kind: ChannelKind, p: T) -> Result<ComplexMatrix<T>> {
    check_probability(p)?;
    let z = re(T::zero());
    let one = re(T::one());
    let a = re((T::one() - p).sqrt());
    let m = match kind {
        ChannelKind::AmplitudeDamping => {
            let b = re(p.sqrt());
            vec![
                vec![one, z, z, z],
                vec![z, a, b, z],
                vec![z, -b, a, z],
                vec![z, z, z, one],
            ]
        }
        ChannelKind::PhaseDamping => {
            let b = re(p.sqrt());
            vec![
                vec![a, -b, z, z, z, z],
                vec![b, a, z, z, z, z],
                vec![z, z, one, z, z, z],
                vec![z, z, z, a, z, -b],
                vec![z, z, z, z, one, z],
                vec![z, z, z, b, z, a],
            ]
        }
        ChannelKind::Depolarizing => {
            let s = (p / T::lit(3.0)).sqrt();
            let r = re(s);
            let i = im(s);
            vec![
                vec![a, z, z, i, z, i, r, z],
                vec![z, a, i, z, i, z, z, r],
                vec![z, i, a, z, r, z, z, i],
                vec![i, z, z, a, z, r, i, z],
                vec![z, i, -r, z, a, z, z, -i],
                vec![i, z, z, -r, z, a, -i, z],
                vec![-r, z, z, i, z, -i, a, z],
                vec![z, -r, i, z, -i, z, z, a],
            ]
        }
    };
    ComplexMatrix::from_rows(m)
}

/// Clock–environment coupling `H_noise` alone (no clock energies).
pub fn noise_hamiltonian<T: Real>(kind: ChannelKind, lambda: T) -> ComplexMatrix<T> {
    let n = kind.dim();
    let mut h = ComplexMatrix::zeros(n, n);
    let mut set = |r: usize, c: usize, v: Complex<T>| {
        h[(r, c)] = v;
        h[(c, r)] = v.conj();
    };
    match kind {
        ChannelKind::AmplitudeDamping => {
            // 2iλ (|10><01| − |01><10|)
            let g = T::lit(2.0) * lambda;
            set(1, 2, im(-g));
        }
        ChannelKind::PhaseDamping => {
            // 2iλ (−|12><10| + |10><12| − |01><00| + |00><01|)
            let g = T::lit(2.0) * lambda;
            set(0, 1, im(g));
            set(3, 5, im(g));
        }
        ChannelKind::Depolarizing => {
            let g = T::lit(4.0) * T::lit(3.0).sqrt() * lambda;
            set(0, 3, re(g));
            set(0, 5, re(g));
            set(0, 6, im(-g));
            set(1, 2, re(g));
            set(1, 4, re(g));
            set(1, 7, im(-g));
        }
    }
    h
}

/// `H_int = H0 ⊗ I + H_noise`.
pub fn build_channel_hamiltonian<T: Real>(
    kind: ChannelKind,
    lambda: T,
    clock: &ClockSpec<T>,
) -> Result<ComplexMatrix<T>> {
    clock.validate()?;
    if !lambda.is_finite() {
        return Err(Error::NonFinite("channel coupling".into()));
    }
    clock
        .extended_hamiltonian(kind.env_dim())
        .add(&noise_hamiltonian(kind, lambda))
}

/// Closed-form spectrum of the amplitude-damping `H_int`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdSpectrum<T> {
    /// `y = ΔE / √(ΔE² + 16λ²)` (1 when both vanish).
    pub y: T,
    /// `E+ = E0 + E1`.
    pub e_plus: T,
    /// `√(ΔE² + 16λ²)`, i.e. `ΔE / y`.
    pub splitting: T,
    /// `{E0, E1, (E+ − ΔE/y)/2, (E+ + ΔE/y)/2}`.
    pub eigenvalues: [T; 4],
}

impl<T: Real> AdSpectrum<T> {
    pub fn new(clock: &ClockSpec<T>, lambda: T) -> Self {
        let de = clock.delta_e();
        let splitting = de.hypot(T::lit(4.0) * lambda);
        let y = if splitting.is_zero() {
            T::one()
        } else {
            de / splitting
        };
        let e_plus = clock.e0 + clock.e1;
        let half = T::lit(0.5);
        Self {
            y,
            e_plus,
            splitting,
            eigenvalues: [
                clock.e0,
                clock.e1,
                half * (e_plus - splitting),
                half * (e_plus + splitting),
            ],
        }
    }
}

fn phase<T: Real>(angle: T) -> Complex<T> {
    Complex::new(angle.cos(), angle.sin())
}

/// Amplitude-damping overlap from the three-term evolved state, environment
/// initially in `|0>`.
pub fn ad_overlap_analytic<T: Real>(
    clock: &ClockSpec<T>,
    lambda: T,
    tau1: T,
    tau2: T,
) -> Complex<T> {
    let dt = tau2 - tau1;
    let spec = AdSpectrum::new(clock, lambda);
    let (p0, p1) = clock.populations();
    let half = T::lit(0.5);
    let lower = half * (T::one() - spec.y);
    let upper = half * (T::one() + spec.y);
    phase(-clock.e0 * dt) * p0
        + (phase(-spec.eigenvalues[2] * dt) * lower + phase(-spec.eigenvalues[3] * dt) * upper) * p1
}

pub fn ad_visibility_analytic<T: Real>(clock: &ClockSpec<T>, lambda: T, tau1: T, tau2: T) -> T {
    if clock.delta_e().is_zero() && lambda.is_zero() {
        return T::one();
    }
    ad_overlap_analytic(clock, lambda, tau1, tau2).norm()
}

/// Phase-damping overlap: each clock level splits evenly over the dressed
/// energies `E_k ± 2λ`.
pub fn pd_overlap_analytic<T: Real>(
    clock: &ClockSpec<T>,
    lambda: T,
    tau1: T,
    tau2: T,
) -> Complex<T> {
    let dt = tau2 - tau1;
    let (p0, p1) = clock.populations();
    let two_l = T::lit(2.0) * lambda;
    let half = T::lit(0.5);
    let level = |e: T| (phase(-(e - two_l) * dt) + phase(-(e + two_l) * dt)) * half;
    level(clock.e0) * p0 + level(clock.e1) * p1
}

pub fn pd_visibility_analytic<T: Real>(clock: &ClockSpec<T>, lambda: T, tau1: T, tau2: T) -> T {
    pd_overlap_analytic(clock, lambda, tau1, tau2).norm()
}

/// Visibility when each arm evolves its own copy of `|ψ_clock>|0>` under
/// `H_int(λ_i)` for proper time `τ_i`.
pub fn two_arm_visibility<T: Real>(
    clock: &ClockSpec<T>,
    kind: ChannelKind,
    arm1: &ArmConfig<T>,
    arm2: &ArmConfig<T>,
) -> Result<VisibilityResult<T>> {
    let initial = clock.product_state(kind.env_dim(), 0)?;
    let spec1 = hermitian_eig(&build_channel_hamiltonian(kind, arm1.lambda, clock)?)?;
    let u1 = spec1.evolution_operator(arm1.tau);
    let u2 = if arm2.lambda == arm1.lambda {
        spec1.evolution_operator(arm2.tau)
    } else {
        hermitian_eig(&build_channel_hamiltonian(kind, arm2.lambda, clock)?)?
            .evolution_operator(arm2.tau)
    };
    overlap_visibility(&u1.apply(&initial)?, &u2.apply(&initial)?)
}

/// Depolarizing visibility by direct exponentiation of the 8x8 `H_int`.
pub fn dp_visibility_numeric<T: Real>(
    clock: &ClockSpec<T>,
    lambda1: T,
    lambda2: T,
    tau1: T,
    tau2: T,
) -> Result<T> {
    let arm1 = ArmConfig::with_coupling(tau1, lambda1)?;
    let arm2 = ArmConfig::with_coupling(tau2, lambda2)?;
    Ok(two_arm_visibility(clock, ChannelKind::Depolarizing, &arm1, &arm2)?.v)
}

/// Transition probability actually produced by `exp(−i H_noise τ*)`.
///
/// AD: `|<01|U|10>|²`, PD: `|<01|U|00>|²`, DP: `1 − |<00|U|00>|²`.
pub fn effective_transition_probability<T: Real>(
    kind: ChannelKind,
    lambda: T,
    tau_star: T,
) -> Result<T> {
    let u = evolution_operator(&noise_hamiltonian(kind, lambda), tau_star)?;
    Ok(match kind {
        ChannelKind::AmplitudeDamping => u[(1, 2)].norm_sqr(),
        ChannelKind::PhaseDamping => u[(1, 0)].norm_sqr(),
        ChannelKind::Depolarizing => T::one() - u[(0, 0)].norm_sqr(),
    })
}

//! Brute-force reference: exponentiate the joint Hamiltonian, evolve both
//! arms, take the overlap. Nothing here touches the closed forms.

use num_complex::Complex;

use crate::channels::{build_channel_hamiltonian, ChannelKind};
use crate::error::{Error, Result};
use crate::interferometer::{overlap_visibility, ClockSpec, VisibilityResult};
use crate::jaynes_cummings::{build_jc_hamiltonian, JcParams};
use crate::numerics::{evolution_operator, ComplexMatrix, StateVector};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleJob<T> {
    pub hamiltonian_arm1: ComplexMatrix<T>,
    pub hamiltonian_arm2: ComplexMatrix<T>,
    pub initial_state: StateVector<T>,
    pub tau1: T,
    pub tau2: T,
}

impl<T: Real> OracleJob<T> {
    pub fn new(
        hamiltonian_arm1: ComplexMatrix<T>,
        hamiltonian_arm2: ComplexMatrix<T>,
        initial_state: StateVector<T>,
        tau1: T,
        tau2: T,
    ) -> Result<Self> {
        let job = Self {
            hamiltonian_arm1,
            hamiltonian_arm2,
            initial_state,
            tau1,
            tau2,
        };
        job.validate()?;
        Ok(job)
    }

    /// Same Hamiltonian on both arms.
    pub fn shared(
        hamiltonian: ComplexMatrix<T>,
        initial_state: StateVector<T>,
        tau1: T,
        tau2: T,
    ) -> Result<Self> {
        Self::new(hamiltonian.clone(), hamiltonian, initial_state, tau1, tau2)
    }

    pub fn validate(&self) -> Result<()> {
        for h in [&self.hamiltonian_arm1, &self.hamiltonian_arm2] {
            h.ensure_hermitian()?;
            if h.rows() != self.initial_state.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.initial_state.dim(),
                    found: h.rows(),
                });
            }
        }
        if !(self.tau1.is_finite() && self.tau2.is_finite()) {
            return Err(Error::NonFinite("oracle proper times".into()));
        }
        Ok(())
    }

    /// Same job with the two arms exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            hamiltonian_arm1: self.hamiltonian_arm2.clone(),
            hamiltonian_arm2: self.hamiltonian_arm1.clone(),
            initial_state: self.initial_state.clone(),
            tau1: self.tau2,
            tau2: self.tau1,
        }
    }
}

/// `exp(−iHt)|ψ>`.
pub fn evolve_state<T: Real>(
    h: &ComplexMatrix<T>,
    state: &StateVector<T>,
    t: T,
) -> Result<StateVector<T>> {
    if h.rows() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: h.rows(),
        });
    }
    evolution_operator(h, t)?.apply(state)
}

pub fn oracle_visibility<T: Real>(job: &OracleJob<T>) -> Result<VisibilityResult<T>> {
    job.validate()?;
    let a = evolve_state(&job.hamiltonian_arm1, &job.initial_state, job.tau1)?;
    let b = evolve_state(&job.hamiltonian_arm2, &job.initial_state, job.tau2)?;
    overlap_visibility(&a, &b)
}

/// Balanced clock times Fock state `|n>` in the JC basis.
pub fn jc_initial_state<T: Real>(params: &JcParams<T>, n: usize) -> Result<StateVector<T>> {
    if n > params.n_cutoff {
        return Err(Error::DimensionMismatch {
            expected: params.n_cutoff,
            found: n,
        });
    }
    let amp = T::FRAC_1_SQRT_2();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); params.dim()];
    amps[params.index(0, n)] = Complex::new(amp, T::zero());
    amps[params.index(1, n)] = Complex::new(amp, T::zero());
    StateVector::normalized(amps)
}

/// JC arm pair with the field in `|n>`; the Fock cutoff is raised to `n + 1`
/// if needed so the sector is represented exactly.
pub fn jc_oracle_job<T: Real>(
    params: &JcParams<T>,
    n: usize,
    tau1: T,
    tau2: T,
) -> Result<OracleJob<T>> {
    let mut p = *params;
    p.n_cutoff = p.n_cutoff.max(n + 1);
    let h = build_jc_hamiltonian(&p)?;
    OracleJob::shared(h, jc_initial_state(&p, n)?, tau1, tau2)
}

/// Channel arm pair with per-arm couplings, environment in its ground level.
pub fn channel_oracle_job<T: Real>(
    kind: ChannelKind,
    clock: &ClockSpec<T>,
    lambda1: T,
    tau1: T,
    lambda2: T,
    tau2: T,
) -> Result<OracleJob<T>> {
    OracleJob::new(
        build_channel_hamiltonian(kind, lambda1, clock)?,
        build_channel_hamiltonian(kind, lambda2, clock)?,
        clock.product_state(kind.env_dim(), 0)?,
        tau1,
        tau2,
    )
}

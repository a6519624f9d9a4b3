use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Normalized vector of complex amplitudes.
///
/// Joint clock ⊗ environment states use the index
/// `clock_level * env_dim + env_level`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self> {
        check_finite(&amps)?;
        let norm_sqr = norm_sqr(&amps);
        if (norm_sqr - T::one()).abs() > T::structural_tolerance() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { amps })
    }

    /// Normalizes arbitrary (non-zero) amplitudes.
    pub fn normalized(mut amps: Vec<Complex<T>>) -> Result<Self> {
        check_finite(&amps)?;
        let norm = norm_sqr(&amps).sqrt();
        if norm <= T::zero() {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        let inv = norm.recip();
        for a in &mut amps {
            *a = *a * inv;
        }
        Ok(Self { amps })
    }

    /// Computational basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k + 1,
            });
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[k] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        norm_sqr(&self.amps)
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        inner_product(self, other)
    }
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner_product<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<Complex<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .fold(Complex::zero(), |acc, (x, &y)| acc + x.conj() * y))
}

fn norm_sqr<T: Real>(amps: &[Complex<T>]) -> T {
    amps.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

fn check_finite<T: Real>(amps: &[Complex<T>]) -> Result<()> {
    if amps.is_empty() {
        return Err(Error::Validation(
            "state must have positive dimension".into(),
        ));
    }
    if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("state amplitudes".into()));
    }
    Ok(())
}

//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! spectral synthesis of `exp(-iHt)`.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{ComplexMatrix, StateVector};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Vec<StateVector<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σ f(λ_k) |v_k><v_k|`.
    pub fn synthesize(&self, mut f: impl FnMut(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.dim();
        let weights: Vec<Complex<T>> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (w, v) in weights.iter().zip(&self.eigenvectors) {
            let a = v.amplitudes();
            for r in 0..n {
                let wr = *w * a[r];
                if wr.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] = out[(r, c)] + wr * a[c].conj();
                }
            }
        }
        out
    }

    /// `Σ λ_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.synthesize(|l| Complex::new(l, T::zero()))
    }

    /// `exp(-iHt)` from this decomposition.
    pub fn evolution_operator(&self, t: T) -> ComplexMatrix<T> {
        self.synthesize(|l| {
            let phase = -l * t;
            Complex::new(phase.cos(), phase.sin())
        })
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Eigenvalues are ascending. Each eigenvector has its first significant
/// component real and positive; eigenvectors of numerically equal
/// eigenvalues are ordered lexicographically by their components.
pub fn hermitian_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<Spectrum<T>> {
    h.ensure_hermitian()?;
    let n = h.rows();
    let mut a = h.clone();
    // Symmetrize so rotations act on an exactly Hermitian matrix.
    for r in 0..n {
        a[(r, r)] = Complex::new(a[(r, r)].re, T::zero());
        for c in (r + 1)..n {
            let avg = (a[(r, c)] + a[(c, r)].conj()) * T::lit(0.5);
            a[(r, c)] = avg;
            a[(c, r)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::<T>::identity(n);
    let scale = a.frobenius_norm();
    let eps = T::epsilon();

    let mut converged = n <= 1 || scale.is_zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = off_diagonal_norm(&a);
        if off <= eps * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, eps * scale);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > eps * scale * T::lit(16.0) {
        return Err(Error::Convergence(format!(
            "Jacobi eigensolver exceeded {MAX_SWEEPS} sweeps"
        )));
    }

    let mut pairs: Vec<(T, Vec<Complex<T>>)> = (0..n)
        .map(|k| {
            let mut col: Vec<Complex<T>> = (0..n).map(|r| v[(r, k)]).collect();
            fix_phase(&mut col);
            (a[(k, k)].re, col)
        })
        .collect();
    sort_pairs(&mut pairs);

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for (l, col) in pairs {
        eigenvalues.push(l);
        eigenvectors.push(StateVector::normalized(col)?);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `exp(-iHt)` for Hermitian `h`, via spectral decomposition.
pub fn evolution_operator<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time".into()));
    }
    Ok(hermitian_eig(h)?.evolution_operator(t))
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc = acc + a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi step annihilating `a[p][q]`.
///
/// The unitary is `G = diag(1, e^{-iφ}) · R(θ)` restricted to rows/cols
/// `p, q`, where `a[p][q] = |a_pq| e^{iφ}` and `R` is the real rotation that
/// diagonalizes the phase-corrected 2x2 block.
fn rotate<T: Real>(
    a: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    floor: T,
) {
    let n = a.rows();
    let b = a[(p, q)];
    let abs_b = b.norm();
    if abs_b.is_zero() {
        return;
    }
    if abs_b < floor * T::lit(1e-3) {
        a[(p, q)] = Complex::zero();
        a[(q, p)] = Complex::zero();
        return;
    }
    let phase = b / abs_b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (abs_b + abs_b);
    let t = {
        let mag = (theta.abs() + theta.hypot(T::one())).recip();
        if theta < T::zero() {
            -mag
        } else {
            mag
        }
    };
    let c = t.hypot(T::one()).recip();
    let s = t * c;
    let cr = Complex::new(c, T::zero());
    let sr = Complex::new(s, T::zero());
    let g_pp = cr;
    let g_pq = sr;
    let g_qp = -(sr * phase.conj());
    let g_qq = cr * phase.conj();

    for r in 0..n {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = x * g_pp + y * g_qp;
        a[(r, q)] = x * g_pq + y * g_qq;
    }
    for c in 0..n {
        let x = a[(p, c)];
        let y = a[(q, c)];
        a[(p, c)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, c)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());

    for r in 0..n {
        let x = v[(r, p)];
        let y = v[(r, q)];
        v[(r, p)] = x * g_pp + y * g_qp;
        v[(r, q)] = x * g_pq + y * g_qq;
    }
}

fn significance<T: Real>() -> T {
    T::epsilon().sqrt()
}

/// Rotates the global phase so the first significant component is real and
/// positive.
fn fix_phase<T: Real>(col: &mut [Complex<T>]) {
    let threshold = significance::<T>();
    if let Some(&lead) = col.iter().find(|z| z.norm() > threshold) {
        let rot = lead.conj() / lead.norm();
        for z in col.iter_mut() {
            *z = *z * rot;
        }
        // Remove the residual imaginary round-off on the leading entry.
        if let Some(z) = col.iter_mut().find(|z| z.norm() > threshold) {
            *z = Complex::new(z.re, T::zero());
        }
    }
}

fn lexicographic<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Ordering {
    let tol = significance::<T>();
    for (x, y) in a.iter().zip(b) {
        for (u, w) in [(x.re, y.re), (x.im, y.im)] {
            if (u - w).abs() > tol {
                return u.partial_cmp(&w).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

fn sort_pairs<T: Real>(pairs: &mut [(T, Vec<Complex<T>>)]) {
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    let max_abs = pairs.iter().fold(T::one(), |m, (l, _)| m.max(l.abs()));
    let tie = T::lit(1e3) * T::epsilon() * max_abs;
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|x, y| lexicographic(&x.1, &y.1));
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn diagonal_input_is_returned_sorted_with_basis_vectors() {
        let h = ComplexMatrix::diagonal(&[0.5, -0.5]);
        let s = hermitian_eig(&h).unwrap();
        assert_eq!(s.eigenvalues, vec![-0.5, 0.5]);
        assert_eq!(s.eigenvectors[0].amplitudes(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(s.eigenvectors[1].amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn amplitude_damping_block_matches_closed_form() {
        // [[E0, -2iλ], [2iλ, E1]] with E0 = 0, E1 = 1, λ = 0.25.
        let lambda = 0.25;
        let h = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -2.0 * lambda)],
            vec![c(0.0, 2.0 * lambda), c(1.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eig(&h).unwrap();
        let de: f64 = 1.0;
        let y = de / (de * de + 16.0 * lambda * lambda).sqrt();
        let expected = [(1.0 - de / y) / 2.0, (1.0 + de / y) / 2.0];
        for (got, want) in s.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn phase_convention_makes_leading_component_real_positive() {
        let h = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.3, 0.7)],
            vec![c(0.3, -0.7), c(-2.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eig(&h).unwrap();
        for v in &s.eigenvectors {
            let lead = v.amplitudes()[0];
            assert!(lead.re > 0.0 && lead.im == 0.0);
        }
    }

    #[test]
    fn degenerate_eigenvalues_get_deterministic_order() {
        let h = ComplexMatrix::<f64>::identity(3);
        let s = hermitian_eig(&h).unwrap();
        // Lexicographic ascending: e3 < e2 < e1.
        assert_eq!(s.eigenvectors[0].amplitudes()[2], c(1.0, 0.0));
        assert_eq!(s.eigenvectors[2].amplitudes()[0], c(1.0, 0.0));
    }

    #[test]
    fn zero_hamiltonian_evolves_to_identity() {
        for n in [1, 2, 5] {
            let u = evolution_operator(&ComplexMatrix::<f64>::zeros(n, n), 3.7).unwrap();
            assert_eq!(u, ComplexMatrix::identity(n));
        }
    }

    #[test]
    fn diagonal_clock_evolution_is_pure_phase() {
        let (de, dt) = (1.3f64, 0.9);
        let u = evolution_operator(&ComplexMatrix::diagonal(&[-de / 2.0, de / 2.0]), dt).unwrap();
        let half = de * dt / 2.0;
        assert!((u[(0, 0)] - c(half.cos(), half.sin())).norm() < 1e-15);
        assert!((u[(1, 1)] - c(half.cos(), -half.sin())).norm() < 1e-15);
        assert_eq!(u[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let h = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(hermitian_eig(&h), Err(Error::NotHermitian { .. })));
        assert!(evolution_operator(&h, 1.0).is_err());
    }

    #[test]
    fn single_precision_decomposition_works() {
        let h = ComplexMatrix::<f32>::from_rows(vec![
            vec![Complex::new(2.0, 0.0), Complex::new(0.0, 1.0)],
            vec![Complex::new(0.0, -1.0), Complex::new(2.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eig(&h).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-6);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-6);
    }
}

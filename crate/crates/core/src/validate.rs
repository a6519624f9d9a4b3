//! Self-check suite: reference values, analytic-vs-oracle agreement and the
//! structural and physical invariants, each reported with its measured
//! deviation.

use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channels::{
    ad_visibility_analytic, arm_coupling, build_channel_hamiltonian, finite_time_unitary,
    noise_hamiltonian, pd_overlap_analytic, pd_visibility_analytic, two_arm_visibility,
    ChannelKind,
};
use crate::error::Result;
use crate::interferometer::{
    fringe_scan, noiseless_visibility, visibility_from_scan, ArmConfig, ClockSpec,
    VisibilityResult, DEFAULT_SCAN_POINTS,
};
use crate::jaynes_cummings::{
    build_jc_hamiltonian, jc_sector_overlap, jc_thermal_visibility, jc_visibility_analytic,
    jc_visibility_with_branch, AlphaBranch, JcParams, ThermalParams,
};
use crate::numerics::{evolution_operator, ComplexMatrix};
use crate::oracle::{channel_oracle_job, jc_oracle_job, oracle_visibility};
use crate::sweep::{figure_preset, run_sweeps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Default,
    Strict,
}

impl Profile {
    /// Random parameter points per randomized check.
    pub fn samples(self) -> usize {
        match self {
            Profile::Default => 100,
            Profile::Strict => 1000,
        }
    }

    fn scan_models(self) -> usize {
        match self {
            Profile::Default => 20,
            Profile::Strict => 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub criterion: String,
    pub detail: String,
}

impl Check {
    fn below(name: &str, measured: f64, bound: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: measured < bound,
            measured,
            criterion: format!("< {bound:e}"),
            detail: detail.into(),
        }
    }

    fn within(name: &str, value: f64, target: f64, tol: f64) -> Self {
        let delta = (value - target).abs();
        Self {
            name: name.into(),
            passed: delta <= tol,
            measured: value,
            criterion: format!("{target} ± {tol:e}"),
            detail: format!("|Δ| = {delta:e}"),
        }
    }

    fn holds(
        name: &str,
        passed: bool,
        measured: f64,
        criterion: &str,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            passed,
            measured,
            criterion: criterion.into(),
            detail: detail.into(),
        }
    }

    fn error(name: &str, err: crate::Error) -> Self {
        Self::holds(name, false, f64::NAN, "no error", err.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub profile: Profile,
    pub passed: bool,
    pub checks: Vec<Check>,
}

const SEED: u64 = 0x7669_7369_6269_6c74;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Random `(ΔE, ω, λ, Δτ)` with `ΔE, ω, λ ∈ [0, 3]`, `Δτ ∈ [0, 2π]`.
pub fn random_points(n: usize, salt: u64) -> Vec<[f64; 4]> {
    let mut r = rng(salt);
    (0..n)
        .map(|_| {
            [
                r.gen_range(0.0..=3.0),
                r.gen_range(0.0..=3.0),
                r.gen_range(0.0..=3.0),
                r.gen_range(0.0..=std::f64::consts::TAU),
            ]
        })
        .collect()
}

fn wrap(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::error(name, e))
}

pub fn golden_field_only() -> Check {
    wrap("golden-jc-field-only", || {
        let start = Instant::now();
        let v = jc_visibility_analytic(&JcParams::new(1.0, 1.1, 0.0, 1)?, 1.0);
        let elapsed = start.elapsed().as_secs_f64();
        let mut c = Check::within("golden-jc-field-only", v, 0.8525, 1e-3);
        c.passed &= elapsed < 1e-3;
        c.detail = format!("{}, runtime {elapsed:e} s", c.detail);
        Ok(c)
    })
}

pub fn golden_noisy() -> Vec<Check> {
    let run = || -> Result<Vec<Check>> {
        let quiet = jc_visibility_analytic(&JcParams::new(1.0, 1.1, 0.0, 1)?, 1.0);
        let noisy_params = JcParams::new(1.0, 1.1, 1.0, 1)?;
        let noisy = jc_visibility_analytic(&noisy_params, 1.0);
        let warm = jc_thermal_visibility(&noisy_params, &ThermalParams::new(0.1)?, 1.0)?;
        Ok(vec![
            Check::within("golden-jc-noisy", noisy, 0.7999, 1.5e-3),
            Check::within("golden-jc-drop", quiet - noisy, 0.0526, 2e-3),
            Check::below(
                "golden-jc-cold-limit",
                (warm - noisy).abs(),
                1e-4,
                format!("V(T=0.1) = {warm}, V(T→0) = {noisy}"),
            ),
        ])
    };
    run().unwrap_or_else(|e| vec![Check::error("golden-jc-noisy", e)])
}

pub fn golden_noiseless() -> Check {
    wrap("golden-noiseless", || {
        Ok(Check::within(
            "golden-noiseless",
            noiseless_visibility(&ClockSpec::with_gap(1.0)?, 1.0),
            0.8776,
            1e-3,
        ))
    })
}

fn jc_oracle_delta(p: &[f64; 4], branch: AlphaBranch) -> Result<f64> {
    let params = JcParams::new(p[0], p[1], p[2], 2)?;
    let analytic = jc_visibility_with_branch(&params, p[3], branch);
    let oracle = oracle_visibility(&jc_oracle_job(&params, 0, 0.0, p[3])?)?.v;
    Ok((analytic - oracle).abs())
}

/// Worst disagreement and the point where it occurs.
fn worst<F>(points: &[[f64; 4]], mut f: F) -> Result<(f64, [f64; 4])>
where
    F: FnMut(&[f64; 4]) -> Result<f64>,
{
    let mut max = (0.0, [0.0; 4]);
    for p in points {
        let d = f(p)?;
        if d.is_nan() || d > max.0 {
            max = (d, *p);
        }
    }
    Ok(max)
}

fn at(p: &[f64; 4]) -> String {
    format!(
        "worst at ΔE={:.4}, ω={:.4}, λ={:.4}, Δτ={:.4}",
        p[0], p[1], p[2], p[3]
    )
}

pub fn oracle_checks(profile: Profile) -> Vec<Check> {
    let pts = random_points(profile.samples(), 1);
    let mut out = Vec::new();

    out.push(wrap("jc-analytic-vs-oracle", || {
        let (d, p) = worst(&pts, |p| jc_oracle_delta(p, AlphaBranch::Principal))?;
        let bad = pts
            .iter()
            .filter(|p| !jc_oracle_delta(p, AlphaBranch::Principal).is_ok_and(|d| d < 1e-10))
            .count();
        let negative = pts.iter().filter(|p| p[0] < p[1]).count();
        Ok(Check::below(
            "jc-analytic-vs-oracle",
            d,
            1e-10,
            format!(
                "{}; {bad}/{} points off, {negative} points have ΔE < ω",
                at(&p),
                pts.len()
            ),
        ))
    }));

    out.push(wrap("jc-continuous-branch-vs-oracle", || {
        let (d, p) = worst(&pts, |p| jc_oracle_delta(p, AlphaBranch::Continuous))?;
        Ok(Check::below(
            "jc-continuous-branch-vs-oracle",
            d,
            1e-10,
            at(&p),
        ))
    }));

    out.push(wrap("jc-thermal-sectors-vs-oracle", || {
        let mut per_sector = [0.0f64; 6];
        for p in &pts {
            let params = JcParams::new(p[0], p[1], p[2], 6)?;
            for (n, slot) in per_sector.iter_mut().enumerate() {
                let analytic = jc_sector_overlap(&params, n, p[3], AlphaBranch::Principal);
                let oracle = oracle_visibility(&jc_oracle_job(&params, n, 0.0, p[3])?)?.kappa;
                *slot = slot.max((analytic - oracle).norm());
            }
        }
        let max = per_sector.iter().cloned().fold(0.0, f64::max);
        let breakdown: Vec<String> = per_sector
            .iter()
            .enumerate()
            .map(|(n, d)| format!("n={n}: {d:.1e}"))
            .collect();
        Ok(Check::below(
            "jc-thermal-sectors-vs-oracle",
            max,
            1e-10,
            format!("max |κ_n − κ_n^oracle| by sector: {}", breakdown.join(", ")),
        ))
    }));

    for (name, kind) in [
        ("ad-analytic-vs-oracle", ChannelKind::AmplitudeDamping),
        ("pd-analytic-vs-oracle", ChannelKind::PhaseDamping),
    ] {
        out.push(wrap(name, || {
            let (d, p) = worst(&pts, |p| {
                let clock = ClockSpec::with_gap(p[0])?;
                let analytic = match kind {
                    ChannelKind::AmplitudeDamping => {
                        ad_visibility_analytic(&clock, p[2], 0.0, p[3])
                    }
                    _ => pd_visibility_analytic(&clock, p[2], 0.0, p[3]),
                };
                let job = channel_oracle_job(kind, &clock, p[2], 0.0, p[2], p[3])?;
                Ok((analytic - oracle_visibility(&job)?.v).abs())
            })?;
            Ok(Check::below(
                name,
                d,
                1e-10,
                format!("worst at ΔE={:.4}, λ={:.4}, Δτ={:.4}", p[0], p[2], p[3]),
            ))
        }));
    }

    out.push(wrap("pd-factorization", || {
        let (d, _) = worst(&pts, |p| {
            let clock = ClockSpec::with_gap(p[0])?;
            let v = pd_overlap_analytic(&clock, p[2], 0.0, p[3]).norm();
            Ok((v - ((p[0] * p[3] / 2.0).cos() * (2.0 * p[2] * p[3]).cos()).abs()).abs())
        })?;
        Ok(Check::below(
            "pd-factorization",
            d,
            1e-12,
            "|V_pd − |cos(ΔEΔτ/2)·cos(2λΔτ)||",
        ))
    }));
    out
}

/// Visibility from a 0.1° phase scan against `|κ|` for random models.
pub fn scan_check(profile: Profile) -> Check {
    wrap("chi-scan-consistency", || {
        let mut r = rng(2);
        let mut max = 0.0f64;
        for i in 0..profile.scan_models() {
            let de = r.gen_range(0.0..3.0);
            let l = r.gen_range(0.0..3.0);
            let dt = r.gen_range(0.0..std::f64::consts::TAU);
            let clock = ClockSpec::with_gap(de)?;
            let arm1 = ArmConfig::with_coupling(0.0, l)?;
            let arm2 = ArmConfig::with_coupling(dt, l)?;
            let result = match i % 5 {
                0 => VisibilityResult::from_kappa(crate::interferometer::noiseless_overlap(
                    &clock, dt,
                )),
                1 => oracle_visibility(&jc_oracle_job(
                    &JcParams::new(de, r.gen_range(0.0..3.0), l, 2)?,
                    0,
                    0.0,
                    dt,
                )?)?,
                2 => two_arm_visibility(&clock, ChannelKind::AmplitudeDamping, &arm1, &arm2)?,
                3 => two_arm_visibility(&clock, ChannelKind::PhaseDamping, &arm1, &arm2)?,
                _ => two_arm_visibility(&clock, ChannelKind::Depolarizing, &arm1, &arm2)?,
            };
            let delta_phi = r.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let scanned =
                visibility_from_scan(&fringe_scan(&result, delta_phi, DEFAULT_SCAN_POINTS))?;
            max = max.max((scanned - result.v).abs());
        }
        Ok(Check::below(
            "chi-scan-consistency",
            max,
            1e-6,
            format!(
                "{} models, {DEFAULT_SCAN_POINTS}-point scan",
                profile.scan_models()
            ),
        ))
    })
}

fn equal_coupling_overlap(
    kind: ChannelKind,
    clock: &ClockSpec<f64>,
    lambda: f64,
    dt: f64,
) -> Result<Complex<f64>> {
    let arm1 = ArmConfig::with_coupling(0.0, lambda)?;
    let arm2 = ArmConfig::with_coupling(dt, lambda)?;
    Ok(two_arm_visibility(clock, kind, &arm1, &arm2)?.kappa)
}

/// `|κ_full − κ_clock · κ_noise|` with both arms at coupling `λ`.
pub fn factorization_error(kind: ChannelKind, lambda: f64, dt: f64) -> Result<f64> {
    let full = equal_coupling_overlap(kind, &ClockSpec::with_gap(1.0)?, lambda, dt)?;
    let clock = equal_coupling_overlap(kind, &ClockSpec::with_gap(1.0)?, 0.0, dt)?;
    let noise = equal_coupling_overlap(kind, &ClockSpec::with_gap(0.0)?, lambda, dt)?;
    Ok((full - clock * noise).norm())
}

pub fn low_noise_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for kind in ChannelKind::ALL {
        let name = format!("low-noise-decrease-{kind}");
        out.push(wrap(&name, || {
            let clock = ClockSpec::with_gap(1.0)?;
            let v0 = equal_coupling_overlap(kind, &clock, 0.0, 1.0)?.norm();
            let mut margin = f64::INFINITY;
            for k in 1..=20 {
                let l = 0.1 * k as f64 / 20.0;
                margin = margin.min(v0 - equal_coupling_overlap(kind, &clock, l, 1.0)?.norm());
            }
            Ok(Check::holds(
                &name,
                margin > 0.0,
                margin,
                "min V(0) − V(λ) > 0",
                "20 couplings in (0, 0.1]",
            ))
        }));

        let name = format!("low-noise-factorization-{kind}");
        out.push(wrap(&name, || {
            let e1 = factorization_error(kind, 1e-3, 1.0)?;
            let e2 = factorization_error(kind, 2e-3, 1.0)?;
            if kind == ChannelKind::PhaseDamping {
                // The dephasing coupling commutes with the clock energies, so
                // the overlap factorizes exactly and the ratio is 0/0.
                let clock = ClockSpec::with_gap(1.0)?;
                let h0 = clock.extended_hamiltonian(kind.env_dim());
                let hn = noise_hamiltonian(kind, 1e-3);
                let comm = h0.matmul(&hn)?.sub(&hn.matmul(&h0)?)?.frobenius_norm();
                return Ok(Check::holds(
                    &name,
                    comm == 0.0 && e1.max(e2) < 1e-14,
                    e1.max(e2),
                    "[H0, H_noise] = 0 and err < 1e-14",
                    format!("‖[H0, H_noise]‖ = {comm:e}, err(λ) = {e1:e}, err(2λ) = {e2:e}"),
                ));
            }
            let ratio = e2 / e1;
            Ok(Check::holds(
                &name,
                (3.5..=4.5).contains(&ratio),
                ratio,
                "err(2λ)/err(λ) ∈ [3.5, 4.5]",
                format!("err(λ=1e-3) = {e1:e}, err(2λ) = {e2:e}"),
            ))
        }));
    }
    out
}

pub fn structural_checks(profile: Profile) -> Vec<Check> {
    let pts = random_points(profile.samples(), 3);
    let mut out = Vec::new();

    out.push(wrap("hamiltonians-hermitian", || {
        let mut max = 0.0f64;
        for p in &pts {
            let clock = ClockSpec::with_gap(p[0])?;
            max = max.max(
                build_jc_hamiltonian(&JcParams::new(p[0], p[1], p[2], 4)?)?
                    .hermitian_deviation()
                    .unwrap_or(f64::INFINITY),
            );
            for kind in ChannelKind::ALL {
                let h = build_channel_hamiltonian(kind, p[2], &clock)?;
                max = max.max(h.hermitian_deviation().unwrap_or(f64::INFINITY));
            }
        }
        Ok(Check::below(
            "hamiltonians-hermitian",
            max,
            1e-12,
            "‖H − H†‖ over JC and channel builders",
        ))
    }));

    out.push(wrap("unitaries-unitary", || {
        let mut max = 0.0f64;
        let mut r = rng(4);
        for p in &pts {
            let clock = ClockSpec::with_gap(p[0])?;
            let jc = build_jc_hamiltonian(&JcParams::new(p[0], p[1], p[2], 4)?)?;
            max = max.max(
                evolution_operator(&jc, p[3])?
                    .unitarity_defect()
                    .unwrap_or(f64::INFINITY),
            );
            for kind in ChannelKind::ALL {
                let u = evolution_operator(&build_channel_hamiltonian(kind, p[2], &clock)?, p[3])?;
                max = max.max(u.unitarity_defect().unwrap_or(f64::INFINITY));
                let u = finite_time_unitary(kind, r.gen_range(0.0..=1.0))?;
                max = max.max(u.unitarity_defect().unwrap_or(f64::INFINITY));
            }
        }
        Ok(Check::below(
            "unitaries-unitary",
            max,
            1e-10,
            "‖U†U − I‖ over synthesized and finite-time unitaries",
        ))
    }));

    out.push(wrap("zero-probability-identity", || {
        let exact = ChannelKind::ALL.iter().all(|&k| {
            finite_time_unitary::<f64>(k, 0.0).is_ok_and(|u| u == ComplexMatrix::identity(k.dim()))
        });
        Ok(Check::holds(
            "zero-probability-identity",
            exact,
            0.0,
            "U(p=0) == I exactly",
            "ad, pd, dp",
        ))
    }));

    out.push(wrap("visibility-range", || {
        let ids = [
            "compare-lambda",
            "compare-dtau-de",
            "ad-asymmetry",
            "pd-symmetry",
        ];
        let mut specs = Vec::new();
        for id in ids {
            specs.extend(figure_preset(id)?.panels);
        }
        let records = run_sweeps(&specs)?;
        let hi = records
            .iter()
            .map(|r| r.visibility)
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = records
            .iter()
            .map(|r| r.visibility)
            .fold(f64::INFINITY, f64::min);
        Ok(Check::holds(
            "visibility-range",
            lo >= 0.0 && hi <= 1.0 + 1e-12,
            hi,
            "0 ≤ V ≤ 1 + 1e-12",
            format!(
                "{} records from {}, min {lo}",
                records.len(),
                ids.join(", ")
            ),
        ))
    }));
    out
}

fn ad_two_arm(p1: f64, p2: f64, tau1: f64, tau2: f64) -> Result<f64> {
    let clock = ClockSpec::with_gap(1.0)?;
    let arm1 = ArmConfig::with_coupling(tau1, arm_coupling(p1, tau1)?)?;
    let arm2 = ArmConfig::with_coupling(tau2, arm_coupling(p2, tau2)?)?;
    Ok(two_arm_visibility(&clock, ChannelKind::AmplitudeDamping, &arm1, &arm2)?.v)
}

/// Largest `|V(p1,p2) − V(p2,p1)|` over a 6×6 probability grid.
pub fn ad_swap_asymmetry(tau1: f64, tau2: f64) -> Result<f64> {
    let grid = crate::sweep::linspace(0.0, 1.0, 6);
    let mut max = 0.0f64;
    for &a in &grid {
        for &b in &grid {
            max = max.max((ad_two_arm(a, b, tau1, tau2)? - ad_two_arm(b, a, tau1, tau2)?).abs());
        }
    }
    Ok(max)
}

pub fn two_arm_checks() -> Vec<Check> {
    vec![
        wrap("ad-equal-times-symmetric", || {
            Ok(Check::below(
                "ad-equal-times-symmetric",
                ad_swap_asymmetry(1.0, 1.0)?,
                1e-10,
                "τ1 = τ2 = 1, 6×6 p-grid",
            ))
        }),
        wrap("ad-unequal-times-asymmetric", || {
            let d = ad_swap_asymmetry(1.0, 2.0)?;
            Ok(Check::holds(
                "ad-unequal-times-asymmetric",
                d > 1e-3,
                d,
                "max > 1e-3",
                "τ1 = 1, τ2 = 2, 6×6 p-grid",
            ))
        }),
    ]
}

pub fn thermal_ordering() -> Check {
    wrap("thermal-ordering", || {
        let params = JcParams::<f64>::new(1.0, 1.1, 0.2, 1)?;
        let cold = jc_visibility_analytic(&params, 1.0);
        let t1 = jc_thermal_visibility(&params, &ThermalParams::new(1.0)?, 1.0)?;
        let t10 = jc_thermal_visibility(&params, &ThermalParams::new(10.0)?, 1.0)?;
        let gap = (t1 - t10).min(cold - t1);
        Ok(Check::holds(
            "thermal-ordering",
            gap > 1e-4,
            gap,
            "V(10) < V(1) < V(0), gaps > 1e-4",
            format!("V(T→0) = {cold}, V(1) = {t1}, V(10) = {t10}"),
        ))
    })
}

pub fn pd_periodicity() -> Check {
    wrap("pd-periodicity", || {
        let clock = ClockSpec::with_gap(1.0)?;
        let mut r = rng(5);
        let mut max = 0.0f64;
        for _ in 0..10 {
            let dt = r.gen_range(0.0..std::f64::consts::TAU);
            let a = pd_visibility_analytic(&clock, 0.25, 0.0, dt);
            let b = pd_visibility_analytic(&clock, 0.25, 0.0, dt + 4.0 * std::f64::consts::PI);
            max = max.max((a - b).abs());
        }
        Ok(Check::below(
            "pd-periodicity",
            max,
            1e-10,
            "ΔE = 1, λ = 0.25, shift 4π",
        ))
    })
}

pub fn effective_probability_notes() -> Check {
    wrap("effective-transition-probability", || {
        use crate::channels::effective_transition_probability as eff;
        let ad = eff(ChannelKind::AmplitudeDamping, 0.1, 1.0)?;
        let pd = eff(ChannelKind::PhaseDamping, 0.1, 1.0)?;
        let dp = eff(ChannelKind::Depolarizing, 0.1, 1.0)?;
        let d = (ad - 0.2f64.sin().powi(2))
            .abs()
            .max((pd - 0.2f64.sin().powi(2)).abs())
            .max((dp - 1.2f64.sin().powi(2)).abs());
        Ok(Check::below(
            "effective-transition-probability",
            d,
            1e-12,
            format!(
                "λ=0.1, τ*=1: ad {ad:.6}, pd {pd:.6}, dp {dp:.6} vs sin²(λτ*) = {:.6}",
                0.1f64.sin().powi(2)
            ),
        ))
    })
}

pub fn run(profile: Profile) -> Report {
    let mut checks = vec![golden_field_only()];
    checks.extend(golden_noisy());
    checks.push(golden_noiseless());
    checks.extend(oracle_checks(profile));
    checks.push(scan_check(profile));
    checks.extend(low_noise_checks());
    checks.extend(structural_checks(profile));
    checks.extend(two_arm_checks());
    checks.push(thermal_ordering());
    checks.push(pd_periodicity());
    checks.push(effective_probability_notes());
    Report {
        profile,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_points_are_reproducible() {
        assert_eq!(random_points(5, 1), random_points(5, 1));
        assert_ne!(random_points(5, 1), random_points(5, 2));
        for p in random_points(50, 9) {
            assert!(p[..3].iter().all(|x| (0.0..=3.0).contains(x)));
            assert!((0.0..=std::f64::consts::TAU).contains(&p[3]));
        }
    }

    #[test]
    fn closed_form_checks_pass() {
        for c in golden_noisy() {
            assert!(c.passed, "{c:?}");
        }
        assert!(golden_noiseless().passed);
        assert!(thermal_ordering().passed);
        assert!(pd_periodicity().passed);
        for c in two_arm_checks() {
            assert!(c.passed, "{c:?}");
        }
        for c in low_noise_checks() {
            assert!(c.passed, "{c:?}");
        }
    }
}

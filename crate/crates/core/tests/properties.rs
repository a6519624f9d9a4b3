use clock_visibility::channels::{
    build_channel_hamiltonian, finite_time_unitary, pd_visibility_analytic, two_arm_visibility,
    ChannelKind,
};
use clock_visibility::interferometer::{
    detection_probability, noiseless_visibility, ArmConfig, ClockSpec, Detector, VisibilityResult,
};
use clock_visibility::jaynes_cummings::{
    build_jc_hamiltonian, jc_sector_overlap, jc_thermal_overlap, jc_visibility_analytic,
    thermal_cutoff, thermal_weight, AlphaBranch, JcParams, ThermalParams,
};
use clock_visibility::numerics::{evolution_operator, hermitian_eig, ComplexMatrix};
use clock_visibility::oracle::{channel_oracle_job, jc_oracle_job, oracle_visibility};
use num_complex::Complex;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ChannelKind> {
    prop_oneof![
        Just(ChannelKind::AmplitudeDamping),
        Just(ChannelKind::PhaseDamping),
        Just(ChannelKind::Depolarizing)
    ]
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix<f64>> {
    prop::collection::vec(-3.0..3.0f64, 2 * n * n).prop_map(move |v| {
        let raw = ComplexMatrix::from_fn(n, n, |i, j| {
            Complex::new(v[2 * (i * n + j)], v[2 * (i * n + j) + 1])
        });
        raw.add(&raw.adjoint())
            .unwrap()
            .scale(Complex::new(0.5, 0.0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigendecomposition_reconstructs(h in (1usize..9).prop_flat_map(hermitian)) {
        let spec = hermitian_eig(&h).unwrap();
        let back = spec.reconstruct();
        prop_assert!(back.sub(&h).unwrap().frobenius_norm() < 1e-10 * h.frobenius_norm().max(1.0));
        for w in spec.eigenvalues.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn evolution_is_unitary_and_composes(h in hermitian(5), t in -4.0..4.0f64, s in -4.0..4.0f64) {
        let u = evolution_operator(&h, t).unwrap();
        prop_assert!(u.unitarity_defect().unwrap() < 1e-10);
        let uv = u.matmul(&evolution_operator(&h, s).unwrap()).unwrap();
        let w = evolution_operator(&h, t + s).unwrap();
        prop_assert!(uv.sub(&w).unwrap().frobenius_norm() < 1e-9);
    }

    #[test]
    fn channel_hamiltonians_hermitian(k in kind(), de in 0.0..3.0f64, l in -3.0..3.0f64) {
        let h = build_channel_hamiltonian(k, l, &ClockSpec::with_gap(de).unwrap()).unwrap();
        prop_assert!(h.hermitian_deviation().unwrap() < 1e-14);
    }

    #[test]
    fn finite_time_unitaries_unitary(k in kind(), p in 0.0..=1.0f64) {
        prop_assert!(finite_time_unitary(k, p).unwrap().unitarity_defect().unwrap() < 1e-12);
    }

    #[test]
    fn jc_hamiltonian_hermitian(de in 0.0..3.0f64, w in 0.0..3.0f64, l in 0.0..3.0f64, n in 1usize..6) {
        let h = build_jc_hamiltonian(&JcParams::new(de, w, l, n).unwrap()).unwrap();
        prop_assert!(h.hermitian_deviation().unwrap() < 1e-14);
    }

    #[test]
    fn two_arm_visibility_in_range(
        k in kind(), de in 0.0..3.0f64, l1 in 0.0..2.0f64, l2 in 0.0..2.0f64, t1 in 0.0..5.0f64, t2 in 0.0..5.0f64,
    ) {
        let clock = ClockSpec::with_gap(de).unwrap();
        let r = two_arm_visibility(
            &clock, k,
            &ArmConfig::with_coupling(t1, l1).unwrap(),
            &ArmConfig::with_coupling(t2, l2).unwrap(),
        ).unwrap();
        prop_assert!(r.v >= 0.0 && r.v <= 1.0 + 1e-12);
    }

    #[test]
    fn oracle_swap_conjugates(
        k in kind(), de in 0.0..3.0f64, l1 in 0.0..2.0f64, l2 in 0.0..2.0f64, t1 in 0.0..5.0f64, t2 in 0.0..5.0f64,
    ) {
        let clock = ClockSpec::with_gap(de).unwrap();
        let job = channel_oracle_job(k, &clock, l1, t1, l2, t2).unwrap();
        let a = oracle_visibility(&job).unwrap();
        let b = oracle_visibility(&job.swapped()).unwrap();
        prop_assert!((a.v - b.v).abs() < 1e-12);
        prop_assert!((a.kappa - b.kappa.conj()).norm() < 1e-12);
    }

    #[test]
    fn jc_oracle_ignores_fock_cutoff(
        de in 0.0..3.0f64, w in 0.0..3.0f64, l in 0.0..3.0f64, dt in 0.0..6.3f64, extra in 1usize..5,
    ) {
        let small = JcParams::new(de, w, l, 1).unwrap();
        let big = JcParams::new(de, w, l, 1 + extra).unwrap();
        let a = oracle_visibility(&jc_oracle_job(&small, 0, 0.0, dt).unwrap()).unwrap().v;
        let b = oracle_visibility(&jc_oracle_job(&big, 0, 0.0, dt).unwrap()).unwrap().v;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn jc_equal_times_give_unit_visibility(de in 0.0..3.0f64, w in 0.0..3.0f64, l in 0.0..3.0f64) {
        let v = jc_visibility_analytic(&JcParams::new(de, w, l, 1).unwrap(), 0.0);
        prop_assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jc_resonance_is_even_in_coupling(de in 0.0..3.0f64, l in 0.0..3.0f64, dt in 0.0..6.3f64) {
        let a = jc_visibility_analytic(&JcParams::new(de, de, l, 1).unwrap(), dt);
        let b = jc_visibility_analytic(&JcParams::new(de, de, -l, 1).unwrap(), dt);
        prop_assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn thermal_triangle_inequality(
        de in 0.0..3.0f64, w in 0.2..3.0f64, l in 0.0..3.0f64, dt in 0.0..6.3f64, t in 0.05..5.0f64,
    ) {
        let params = JcParams::new(de, w, l, 1).unwrap();
        let thermal = ThermalParams::new(t).unwrap();
        let v = jc_thermal_overlap(&params, &thermal, dt, AlphaBranch::Principal).unwrap().norm();
        let n_max = thermal_cutoff(w, t, 1e-12).unwrap();
        let bound: f64 = (0..=n_max)
            .map(|n| thermal_weight(w, &thermal, n) * jc_sector_overlap(&params, n, dt, AlphaBranch::Principal).norm())
            .sum();
        prop_assert!(v <= bound + 1e-12);
        prop_assert!(v <= 1.0 + 1e-12);
    }

    #[test]
    fn thermal_weights_cover_one_minus_tail(w in 0.1..3.0f64, t in 0.05..10.0f64) {
        let thermal = ThermalParams::new(t).unwrap();
        let n_max = thermal_cutoff(w, t, 1e-12).unwrap();
        let total: f64 = (0..=n_max).map(|n| thermal_weight(w, &thermal, n)).sum();
        prop_assert!(total >= 1.0 - 1e-12 - 1e-12);
        prop_assert!(total <= 1.0 + 1e-12);
    }

    #[test]
    fn thermal_equal_times_give_unit_visibility(de in 0.0..3.0f64, w in 0.2..3.0f64, l in 0.0..3.0f64, t in 0.05..5.0f64) {
        let v = jc_thermal_overlap(&JcParams::new(de, w, l, 1).unwrap(), &ThermalParams::new(t).unwrap(), 0.0, AlphaBranch::Principal)
            .unwrap()
            .norm();
        prop_assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pd_factorizes(de in 0.0..3.0f64, l in 0.0..3.0f64, dt in 0.0..6.3f64) {
        let v = pd_visibility_analytic(&ClockSpec::with_gap(de).unwrap(), l, 0.0, dt);
        let f = ((de * dt / 2.0).cos() * (2.0 * l * dt).cos()).abs();
        prop_assert!((v - f).abs() < 1e-12);
    }

    #[test]
    fn detector_probabilities_complement(v in 0.0..1.0f64, ups in -3.2..3.2f64, dphi in -3.2..3.2f64, chi in 0.0..6.3f64) {
        let r = VisibilityResult::from_kappa(Complex::from_polar(v, ups));
        let plus = detection_probability(&r, dphi, chi, Detector::Plus);
        let minus = detection_probability(&r, dphi, chi, Detector::Minus);
        prop_assert!((plus + minus - 1.0).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&plus));
    }

    #[test]
    fn noiseless_is_cosine(de in 0.0..10.0f64, dt in -10.0..10.0f64) {
        let v = noiseless_visibility(&ClockSpec::with_gap(de).unwrap(), dt);
        prop_assert!((v - (de * dt / 2.0).cos().abs()).abs() < 1e-12);
    }
}

#[test]
fn single_precision_core() {
    let clock = ClockSpec::<f32>::with_gap(1.0).unwrap();
    let v = noiseless_visibility(&clock, 1.0);
    assert!((v - 0.8775826).abs() < 1e-6);
    let h = build_channel_hamiltonian(ChannelKind::AmplitudeDamping, 0.3f32, &clock).unwrap();
    assert!(
        evolution_operator(&h, 1.0)
            .unwrap()
            .unitarity_defect()
            .unwrap()
            < 1e-5
    );
    let jc = jc_visibility_analytic(&JcParams::<f32>::new(1.0, 1.1, 0.0, 1).unwrap(), 1.0);
    assert!((jc - 0.8525245).abs() < 1e-5);
}

use lcsim_core::flow::{step, FlowState, PhysParams, StepOptions};
use lcsim_core::norms::{
    coercivity_check, energy_functional, m_eval, m_xi_derivative_weighted, region_classify, region_inequality_check,
    x_norm_update, y_norm, EnergyAccumulators, MultiplierGrid, NormParams, Region, RegionExponents, WeightOp,
    XNormAccumulator,
};
use lcsim_core::spectral::{Grid, SpectralField};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn multiplier_bounds(k in -50.0..50.0f64, xi in -1e3..1e3f64, log_a in 0.0..6.0f64) {
        let a = 10f64.powf(log_a);
        let m = m_eval(k, xi, a);
        prop_assert!((1.0..=1.0 + 2.0 * PI).contains(&m));
        let w = m_xi_derivative_weighted(k, xi, a);
        prop_assert!(w >= 0.0);
        if k != 0.0 {
            prop_assert!(w > 0.0);
        }
    }

    #[test]
    fn derivative_matches_finite_difference(
        k in prop_oneof![0.05..20.0f64, -20.0..-0.05f64],
        xi in -20.0..20.0f64,
        log_a in 0.0..3.0f64,
    ) {
        let a = 10f64.powf(log_a);
        // step proportional to the smaller of the two arctan scales
        let scale = k.abs().min((a * k.abs()).cbrt());
        let h = 1e-5 * scale;
        let fd = k * (m_eval(k, xi + h, a) - m_eval(k, xi - h, a)) / (2.0 * h);
        prop_assert!((fd - m_xi_derivative_weighted(k, xi, a)).abs() < 1e-8);
    }

    #[test]
    fn region_constants_hold(
        k in -30.0..30.0f64,
        l in -30.0..30.0f64,
        s in 0.0..2.0f64,
        s1 in 0.0..2.0f64,
        s2 in 0.0..2.0f64,
    ) {
        prop_assume!(k != 0.0 && k != l && l != 0.0);
        let e = RegionExponents { s, s1, s2 };
        prop_assert!(region_inequality_check(k, l, e).unwrap());
    }

    #[test]
    fn regions_partition(k in -10.0..10.0f64, l in -10.0..10.0f64) {
        let r = region_classify(k, l);
        let (ak, akl) = (k.abs(), (k - l).abs());
        let res = 0.5 * akl <= ak && ak <= 2.0 * akl;
        prop_assert_eq!(r == Region::Res, res);
        prop_assert_eq!(r == Region::HighLow, ak > 2.0 * akl);
        prop_assert_eq!(r == Region::LowHigh, 2.0 * ak < akl);
    }

    #[test]
    fn y_norm_is_a_norm(seed in any::<u64>(), alpha in -5.0..5.0f64) {
        let g = Grid::square(16, PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = NormParams::default();
        let f = SpectralField::random_real(g, &mut rng, 5, 5, 1.0, 0.2);
        let h = SpectralField::random_real(g, &mut rng, 5, 5, 1.0, 0.2);
        for op in [WeightOp::Identity, WeightOp::AbsDx13, WeightOp::Dxx13, WeightOp::Dyy13] {
            let nf = y_norm(&f, &p, op);
            prop_assert!((y_norm(&(&f * alpha), &p, op) - alpha.abs() * nf).abs() <= 1e-12 * nf.max(1.0));
            let mut sum = f.clone();
            sum += &h;
            prop_assert!(y_norm(&sum, &p, op) <= nf + y_norm(&h, &p, op) + 1e-12);
        }
    }
}

#[test]
fn coercivity_margin_on_random_fields() {
    let g = Grid::new(32, 32, 2.0 * PI, PI, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let s: f64 = rng.gen_range(-0.5..0.5);
        let f = SpectralField::random_real(g, &mut rng, 15, 15, 1.0, s);
        for a in [1.0, 10.0, 1e3] {
            let c = coercivity_check(&f, a);
            assert!(c.margin >= -1e-12 * c.lhs.abs().max(1.0), "{c:?}");
        }
    }
}

#[test]
fn two_mode_y_norm_matches_hand_sum() {
    let g = Grid::square(16, PI).unwrap();
    let p = NormParams::default();
    let mut f = SpectralField::single_mode(g, 2, 1, Complex64::new(0.5, 0.0), 0.0).unwrap();
    f += &SpectralField::single_mode(g, 0, 3, Complex64::new(0.0, 0.25), 0.0).unwrap();
    let lam = |k: f64| (1.0 + k * k).powf(p.m) * (1.0 + 1.0 / (k * k)).powf(p.eps);
    let hand = g.area() * (lam(2.0) * 0.25 + lam(0.5) * 0.0625);
    assert!((y_norm(&f, &p, WeightOp::Identity).powi(2) - hand).abs() < 1e-12 * hand);
}

#[test]
fn commutator_identity_along_transport() {
    // d/dt ||sqrt(M) f||^2 = -int k dM/dxi |f|^2 when f is carried by the shear
    let g = Grid::new(32, 32, 2.0 * PI, PI, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = SpectralField::random_real(g, &mut rng, 12, 12, 1.0, 0.0);
    for a in [1.0, 10.0, 1e3] {
        for t in [0.0, 0.7, 3.0] {
            let h = 1e-4;
            // frame offset s = -t
            let plus = MultiplierGrid::new(g, -(t + h), a).weighted_energy(&f);
            let minus = MultiplierGrid::new(g, -(t - h), a).weighted_energy(&f);
            let fd = (plus - minus) / (2.0 * h);
            let exact = -MultiplierGrid::new(g, -t, a).commutator_energy(&f);
            assert!((fd - exact).abs() <= 1e-6 * exact.abs(), "A {a} t {t}: {fd} vs {exact}");
        }
    }
}

fn kelvin_state(g: Grid) -> FlowState {
    let mut st = FlowState::zeros(g);
    st.omega = SpectralField::real_mode(g, 2, 3, Complex64::new(0.2, 0.1), 0.0).unwrap();
    st.omega += &SpectralField::real_mode(g, 1, -2, Complex64::new(0.0, 0.3), 0.0).unwrap();
    st
}

#[test]
fn x_norm_quadrature_converges_on_linear_run() {
    let g = Grid::square(32, PI).unwrap();
    let p = PhysParams {
        amplitude: 10.0,
        nu: 1.0,
        lam: 0.0,
        gam: 1.0,
    };
    let np = NormParams::default();
    let dt = 0.01;
    let run = |every: usize| {
        let mut st = kelvin_state(g);
        let mut acc = XNormAccumulator::new();
        x_norm_update(&mut acc, &[&st.omega], &[WeightOp::Identity], st.t, &np, p.amplitude).unwrap();
        for n in 1..=400 {
            st = step(&st, &p, dt, &StepOptions::linear()).unwrap().0;
            if n % every == 0 {
                x_norm_update(&mut acc, &[&st.omega], &[WeightOp::Identity], st.t, &np, p.amplitude).unwrap();
            }
        }
        acc
    };
    let dense = run(1);
    let coarse = run(10);
    assert!(dense.value().is_finite());
    let rel = (coarse.value() - dense.value()).abs() / dense.value();
    assert!(rel < 1e-2, "{rel}");
}

#[test]
fn x_terms_are_monotone_and_energy_adds_up() {
    let g = Grid::square(32, PI).unwrap();
    let p = PhysParams {
        amplitude: 1e3,
        nu: 1.0,
        lam: 1.0,
        gam: 1.0,
    };
    let np = NormParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut st = FlowState::zeros(g);
    st.omega = SpectralField::random_real(g, &mut rng, 2, 2, 1e-3, 0.0);
    st.d[1] = SpectralField::random_real(g, &mut rng, 2, 2, 1e-3, 0.0);
    st.d[1].coeffs_mut()[0] = Complex64::default();
    let mut accs = EnergyAccumulators::new();
    accs.update(&st, &np, p.amplitude).unwrap();
    let mut prev = accs.clone();
    for _ in 0..50 {
        st = step(&st, &p, 0.05, &StepOptions::default()).unwrap().0;
        accs.update(&st, &np, p.amplitude).unwrap();
        for (a, b) in [(&prev.d13, &accs.d13), (&prev.hess13, &accs.hess13), (&prev.omega, &accs.omega)] {
            for i in 0..4 {
                assert!(b.terms[i] >= a.terms[i]);
            }
        }
        let e = energy_functional(&accs, &np, p.amplitude).unwrap();
        assert!((e.d13 + e.hess13 + e.omega - e.total).abs() <= 1e-12 * e.total);
        prev = accs.clone();
    }
}

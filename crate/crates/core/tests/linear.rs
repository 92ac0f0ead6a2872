use lcsim_core::flow::{step, FlowState, PhysParams, StepOptions};
use lcsim_core::linear::{
    enhanced_dissipation_check, inviscid_damping_bound, inviscid_damping_check, kelvin_exact, DecayCase, KelvinMode,
};
use lcsim_core::spectral::{Grid, SpectralField};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn cases(ks: &[f64], nus: &[f64]) -> Vec<DecayCase> {
    ks.iter()
        .flat_map(|&k| nus.iter().map(move |&nu| DecayCase { k, xi_initial: 0.0, nu }))
        .collect()
}

#[test]
fn enhanced_dissipation_exponents() {
    let fit = enhanced_dissipation_check(&cases(&[1.0, 2.0, 4.0, 8.0], &[1e-2, 1e-3, 1e-4]), 10.0).unwrap();
    assert!((0.63..=0.70).contains(&fit.k_exponent), "{}", fit.k_exponent);
    assert!((0.30..=0.37).contains(&fit.nu_exponent), "{}", fit.nu_exponent);
    assert_eq!(fit.residuals.len(), 12);
    assert!(fit.c > 0.0);
}

#[test]
fn shallow_depth_is_contaminated_by_heat_decay() {
    // at one e-fold the k^2 t term still matters for nu = 1e-2 and k = 8
    let fit = enhanced_dissipation_check(&cases(&[1.0, 2.0, 4.0, 8.0], &[1e-2, 1e-3, 1e-4]), 1.0).unwrap();
    assert!(fit.k_exponent > 0.70);
}

#[test]
fn exponents_converge_as_viscosity_vanishes() {
    let fit = enhanced_dissipation_check(&cases(&[1.0, 2.0, 4.0, 8.0], &[1e-7, 1e-8, 1e-9]), 10.0).unwrap();
    assert!((fit.k_exponent - 2.0 / 3.0).abs() < 2e-3);
    assert!((fit.nu_exponent - 1.0 / 3.0).abs() < 2e-3);
}

#[test]
fn inviscid_slope() {
    let case = DecayCase {
        k: 1.0,
        xi_initial: 0.0,
        nu: 0.0,
    };
    let ts: Vec<f64> = (0..=90).map(|i| 10.0 + i as f64).collect();
    let slope = inviscid_damping_check(&case, &ts).unwrap();
    assert!((slope + 2.0).abs() < 0.05, "{slope}");
}

proptest! {
    #[test]
    fn inviscid_bound_with_c_two(k in prop_oneof![0.1..10.0f64, -10.0..-0.1f64], xi in -50.0..50.0f64, t in 0.0..200.0f64) {
        let (lhs, rhs) = inviscid_damping_bound(k, xi, 0.0, t, 2.0);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn exponent_is_monotone(k in -5.0..5.0f64, xi in -20.0..20.0f64, t in 0.0..50.0f64, dt in 1e-3..1.0f64) {
        let m = KelvinMode { k, xi0: xi, amplitude: Complex64::new(1.0, 0.0), nu: 0.01 };
        let a = kelvin_exact(&m, t).norm();
        // with a fixed terminal frequency, a longer history means more decay
        let b = kelvin_exact(&m, t + dt).norm();
        prop_assert!(b <= a);
    }
}

/// Storage label of the mode that started at physical `(k, eta)`.
fn current_label(g: &Grid, s: f64, j: i64, eta: f64, t: f64) -> i64 {
    let k = j as f64 * g.dk();
    ((eta - k * t - k * s) / g.dxi()).round() as i64
}

#[test]
fn linear_solver_matches_kelvin_per_mode() {
    let g = Grid::square(64, PI).unwrap();
    let p = PhysParams {
        amplitude: 1.0,
        nu: 1e-3,
        lam: 0.0,
        gam: 1.0,
    };
    let modes = [(1i64, 5i64, Complex64::new(1.0, 0.5)), (2, 3, Complex64::new(-0.3, 0.2)), (3, 10, Complex64::new(0.0, 0.7)), (0, 4, Complex64::new(0.4, 0.0))];
    let mut st = FlowState::zeros(g);
    for (j, i, c) in modes {
        st.omega += &SpectralField::real_mode(g, j, i, c, 0.0).unwrap();
    }
    let dt = 0.02;
    let mut worst: f64 = 0.0;
    for n in 1..=500 {
        st = step(&st, &p, dt, &StepOptions::linear()).unwrap().0;
        if n % 25 != 0 {
            continue;
        }
        for (j, i, c) in modes {
            let k = j as f64 * g.dk();
            let eta = i as f64 * g.dxi();
            let label = current_label(&g, st.shear_time(), j, eta, st.t);
            let got = st.omega.get(j, label);
            let mode = KelvinMode {
                k,
                xi0: eta - k * st.t,
                amplitude: c,
                nu: p.omega_diffusivity(),
            };
            let want = kelvin_exact(&mode, st.t);
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    assert!((st.t - 10.0).abs() < 1e-9);
    assert!(worst < 1e-10, "{worst}");
}

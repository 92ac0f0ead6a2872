use lcsim_core::initial_data::{
    amplitude_threshold, family_norms, family_report, gap_check, make_director_data, make_director_state,
    norms_report, report_grid, schwartz_band_profile, theta_for_smallness, InitialDataParams,
};
use lcsim_core::linear::log_log_slope;
use lcsim_core::norms::NormParams;
use lcsim_core::spectral::{to_physical, Grid};
use lcsim_core::Error;
use std::f64::consts::PI;

fn params(lambda: f64, n: f64) -> InitialDataParams {
    InitialDataParams { lambda, n, theta: 1.0 }
}

fn sim_grid() -> Grid {
    // dk = 0.3/16, dxi = 1/4
    Grid::new(128, 512, 16.0 * PI / 0.3, 4.0 * PI, 2).unwrap()
}

#[test]
fn profile_is_normalized_and_decays_fast() {
    let p = schwartz_band_profile(1024, 32.0 * PI).unwrap();
    assert!((p.norm_sq() - 1.0).abs() < 1e-10);
    // physical profile: Fourier bump => super-algebraic decay in x
    let n = p.coeffs.len();
    let val = |x: f64| -> f64 {
        (0..n)
            .map(|a| {
                let j = if a < n / 2 { a as f64 } else { a as f64 - n as f64 };
                p.coeffs[a] * (j * PI / p.l * x).cos()
            })
            .sum()
    };
    let (v5, v20, v40) = (val(5.0).abs(), val(20.0).abs(), val(40.0).abs());
    let v0 = val(0.0).abs();
    assert!(v5 < v0 && v20 < v5 && v40 < v20 && v40 < 1e-2 * v0, "{v0} {v5} {v20} {v40}");
}

#[test]
fn literal_data_has_only_e1_and_band_support() {
    let g = sim_grid();
    let p = params(0.3, 8.0);
    let d = make_director_data(&p, &g).unwrap();
    assert_eq!(d[1].l2_norm(), 0.0);
    assert_eq!(d[2].l2_norm(), 0.0);
    for a in 0..g.nx {
        for b in 0..g.ny {
            let c = d[0].coeffs()[g.index(a, b)];
            if c.norm() > 0.0 {
                let k = g.k(a).abs();
                assert!(k > 0.3 && k < 0.6, "k {k}");
            }
            if g.k(a) == 0.0 {
                assert_eq!(c.norm(), 0.0);
            }
        }
    }
    assert!(d[0].conjugate_symmetry_defect() < 1e-15);
}

#[test]
fn literal_data_peaks_at_origin() {
    let g = sim_grid();
    let d = make_director_data(&params(0.3, 8.0), &g).unwrap();
    let phys = to_physical(&d[0]);
    let (mut best, mut at) = (0.0, 0);
    for (i, v) in phys.values().iter().enumerate() {
        if v.abs() > best {
            best = v.abs();
            at = i;
        }
    }
    assert_eq!(at, g.index(g.nx / 2, g.ny / 2));
}

#[test]
fn l2_norm_factorizes() {
    for n in [32.0, 64.0] {
        let p = params(0.3, n);
        let g = Grid::new(128, 2048, 16.0 * PI / 0.3, 8.0 * PI, 2).unwrap();
        let d = make_director_data(&p, &g).unwrap();
        let expect = p.lambda.powf(p.theta) * p.lambda.powf(-0.5) * 0.5f64.sqrt();
        assert!((d[0].l2_norm() / expect - 1.0).abs() < 0.02);
    }
}

#[test]
fn separable_norms_match_full_grid() {
    let np = NormParams::default();
    let p = params(0.3, 12.0);
    let g = Grid::new(128, 512, 16.0 * PI / 0.3, 8.0 * PI, 2).unwrap();
    let d = make_director_data(&p, &g).unwrap();
    let full = norms_report(&d, None, &np, 1.0);
    let (l, h, e) = family_norms(&p, &g, &np).unwrap();
    for (a, b) in [(full.l, l), (full.h, h), (full.e, e)] {
        assert!((a - b).abs() < 1e-12 * b, "{a} vs {b}");
    }
    assert_eq!(full.w_omega, 0.0);
}

#[test]
fn lifted_data_is_on_sphere_and_tangent_to_literal() {
    let g = sim_grid();
    let p = InitialDataParams {
        lambda: 0.3,
        n: 8.0,
        theta: 2.0,
    };
    let lit = make_director_data(&p, &g).unwrap();
    let d = make_director_state(&p, &g).unwrap();
    let defect = lcsim_core::flow::sphere_defect(&d);
    assert!(defect < 1e-8, "{defect}");
    // first order: d2 = psi, d1 = O(psi^2)
    let mut diff = d[1].clone();
    diff.axpy(-1.0, &lit[0]).unwrap();
    let psi_max = to_physical(&lit[0]).max_abs();
    assert!(to_physical(&diff).max_abs() < psi_max.powi(3));
    assert!(to_physical(&d[0]).max_abs() < psi_max * psi_max);
}

#[test]
fn unresolvable_band_is_rejected() {
    let g = Grid::new(32, 32, 16.0 * PI / 0.3, 4.0 * PI, 2).unwrap();
    assert!(matches!(make_director_data(&params(0.3, 8.0), &g), Err(Error::BandViolation(_))));
}

#[test]
fn low_order_norm_approaches_its_power_law() {
    let np = NormParams::default();
    let lams = [0.001, 0.002, 0.004];
    let ls: Vec<f64> = lams.iter().map(|&l| family_report(&params(l, 38.0), &np, 1.0).unwrap().l).collect();
    let slope = log_log_slope(&lams, &ls).unwrap();
    assert!((slope - (1.0 - 0.4 - 1.0 / 6.0)).abs() < 1e-3, "{slope}");
}

#[test]
fn low_order_slope_is_biased_at_moderate_lambda() {
    // <k>^m is not ~1 on [lambda, 2 lambda] once lambda ~ 0.4; the local
    // slope drifts upward from mu
    let np = NormParams::default();
    let lams = [0.05, 0.1, 0.2, 0.4];
    let ls: Vec<f64> = lams.iter().map(|&l| family_report(&params(l, 38.0), &np, 1.0).unwrap().l).collect();
    let slope = log_log_slope(&lams, &ls).unwrap();
    assert!(slope > 0.5 && slope < 0.55, "{slope}");
}

#[test]
fn high_order_to_low_order_ratio_is_n_squared() {
    let np = NormParams::default();
    let ns = [64.0, 128.0, 256.0];
    let ratios: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let r = family_report(&params(0.3, n), &np, 1.0).unwrap();
            r.h / r.l
        })
        .collect();
    for (r, n) in ratios.iter().zip(ns) {
        assert!((r / (n * n) - 1.0).abs() < 0.1);
    }
    assert!((log_log_slope(&ns, &ratios).unwrap() - 2.0).abs() < 0.01);
}

#[test]
fn dirichlet_energy_scaling_and_size() {
    let np = NormParams::default();
    let lams = [0.05, 0.1, 0.2, 0.4];
    let es: Vec<f64> = lams.iter().map(|&l| family_report(&params(l, 38.0), &np, 1.0).unwrap().e).collect();
    assert!((log_log_slope(&lams, &es).unwrap() - 1.0).abs() < 0.01);
    let r = family_report(&params(0.3, 38.0), &np, 1.0).unwrap();
    assert!(r.e >= 0.5 * 0.3 * 38.0 * 38.0);
    assert!(r.e > 8.0 * PI);
}

#[test]
fn gap_inequality_as_stated() {
    let np = NormParams::default();
    let g = gap_check(&params(0.3, 38.0), &np, 1.0).unwrap();
    assert!((g.mu - 0.4333333333333333).abs() < 1e-12 && g.mu > 1.0 / 3.0);
    // N = lam^-3 passes the printed power but not the inequality it abbreviates:
    // taking the kappa-th root leaves lam^-(mu/2)(1 + 1/(delta kappa)), below lam^-3
    for lam in [0.1f64, 0.05, 0.01] {
        let g = gap_check(&params(lam, lam.powi(-3)), &np, 1.0).unwrap();
        assert!(g.printed_form_ok);
        assert!(!g.gap_ok);
        assert!(g.n_max < lam.powi(-3));
    }
    // and N below n_max does satisfy it
    let lam: f64 = 1e-6;
    let np2 = NormParams { delta: 1.05, ..np };
    let g = gap_check(&params(lam, 4.0), &np2, 1.0).unwrap();
    assert!(g.n_max > 4.0 && g.gap_ok, "{g:?}");
    let g = gap_check(&params(0.99, 1000.0), &np, 1.0).unwrap();
    assert!(!g.gap_ok);
}

#[test]
fn gap_check_rejects_nonpositive_mu() {
    let p = InitialDataParams {
        lambda: 0.3,
        n: 8.0,
        theta: 0.5,
    };
    assert!(matches!(gap_check(&p, &NormParams::default(), 1.0), Err(Error::InvalidParam(_))));
}

#[test]
fn threshold_formula() {
    let np = NormParams::default();
    assert_eq!(amplitude_threshold(0.0, 0.0, 1.0, &np, 3.0).a_bar, 3.0);
    let k = |delta| amplitude_threshold(0.0, 0.0, 1.0, &NormParams { delta, ..np }, 1.0).kappa;
    assert_eq!(k(1.1), 24.0);
    assert!((k(1.05) - 40.0).abs() < 1e-9);
    let t = amplitude_threshold(1.0, 0.0, 0.25, &np, 1.0);
    assert_eq!(t.a_bar, 2f64.powi(24));
    assert!((t.a_max - 0.25f64.powf(-1.0 / 1.5)).abs() < 1e-12);
}

#[test]
fn report_is_internally_consistent() {
    let np = NormParams::default();
    let r = family_report(&params(0.3, 38.0), &np, 1.0).unwrap();
    let t = amplitude_threshold(r.h, r.w_omega, r.l, &np, 1.0);
    assert_eq!(r.gap_ok, t.a_bar < t.a_max);
    assert_eq!(r.a_bar, t.a_bar);
    assert!(!r.note.is_empty());
    assert!(report_grid(&params(0.3, 38.0)).unwrap().xi_max() > 40.0);
}

#[test]
fn theta_hits_requested_smallness() {
    let np = NormParams::default();
    let g = sim_grid();
    let theta = theta_for_smallness(0.3, 8.0, &g, &np, 1e3, 0.5).unwrap();
    let (l, _, _) = family_norms(&InitialDataParams { lambda: 0.3, n: 8.0, theta }, &g, &np).unwrap();
    assert!((1e3f64.powf(np.delta) * l - 0.5).abs() < 1e-10);
}

#[test]
fn parameter_validation() {
    let np = NormParams::default();
    assert!(params(0.3, 38.0).validate(&np).is_ok());
    assert!(params(1.0, 38.0).validate(&np).is_err());
    assert!(params(0.3, 2.0).validate(&np).is_err());
    assert!(InitialDataParams { lambda: 0.3, n: 8.0, theta: 0.5 }.validate(&np).is_err());
}

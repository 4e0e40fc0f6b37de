use gwell_core::ansatz::{optimize, reevaluate, variational_energy, AnsatzConfig};
use gwell_core::critical::{fit_h_series, fit_threshold, geometric_grid};
use gwell_core::linalg::SymmetricEigen;
use gwell_core::mesh::{build_mesh, centrifugal_vector, kinetic_matrix, MeshSpec};
use gwell_core::qdot::{cusp_log_derivative, qdot_energy, QDotModel, QDotOrders, QDotTrial};
use gwell_core::quadrature::QuadratureRule;
use gwell_core::spectrum::{bound_energies, degeneracy_check, WellSpec};
use proptest::prelude::*;

fn lmm_ground(v0: f64, d: u32, ell: u32) -> f64 {
    let w = WellSpec::new(v0, d, ell).unwrap();
    bound_energies(&w, MeshSpec::for_well(&w, 300, 1.0)).unwrap()[0]
}

/// Lowest level of `-½Δ - V0 e^{-λ r²}`, assembled by hand on a scale-`h` mesh.
fn ground_with_width(v0: f64, lambda: f64, d: u32, ell: u32, n: usize, h: f64) -> f64 {
    let nu = d + 2 * ell;
    let mesh = build_mesh(MeshSpec::for_nu(nu, n, h)).unwrap();
    let mut t = kinetic_matrix(&mesh);
    let diag: Vec<f64> = mesh
        .scaled_points
        .iter()
        .zip(centrifugal_vector(&mesh, nu))
        .map(|(r, c)| c - v0 * (-lambda * r * r).exp())
        .collect();
    t.add_diagonal(&diag);
    SymmetricEigen::values(&t).unwrap()[0]
}

#[test]
fn optimized_ansatz_never_beats_the_mesh() {
    let mut count = 0;
    for v0 in [7.0, 10.0, 20.0, 50.0, 100.0] {
        for (d, ell) in [(3, 0), (3, 1), (2, 0), (2, 1)] {
            let w = WellSpec::new(v0, d, ell).unwrap();
            let e = optimize(&w, 1, 4, 0).unwrap().energy;
            let exact = lmm_ground(v0, d, ell);
            assert!(e >= exact - 1e-9, "v0={v0} d={d} l={ell}: {e} < {exact}");
            count += 1;
        }
    }
    assert_eq!(count, 20);
}

fn config() -> impl Strategy<Value = AnsatzConfig> {
    (0.1f64..20.0, 0.0f64..2.0, 0.0f64..1.5).prop_map(|(a, b, s)| AnsatzConfig::new(a, b, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_superposition_is_an_upper_bound(v0 in 2.0f64..100.0, c1 in config(), c2 in config()) {
        prop_assume!((c1.a - c2.a).abs() + (c1.b - c2.b).abs() + (c1.s - c2.s).abs() > 1e-3);
        let w = WellSpec::new(v0, 3, 0).unwrap();
        prop_assume!(c1.is_normalizable(&w) && c2.is_normalizable(&w));
        let rule = QuadratureRule::half_line(24).unwrap();
        if let Ok((e, _)) = variational_energy(&w, &[c1, c2], &rule) {
            prop_assert!(e >= lmm_ground(v0, 3, 0) - 1e-9);
        }
    }

    #[test]
    fn equal_nu_levels_coincide(v0 in 5.0f64..120.0, pick in 0usize..10) {
        let pairs = [(3, 1, 5, 0), (2, 1, 4, 0), (3, 2, 5, 1), (3, 2, 7, 0), (2, 2, 4, 1),
                     (2, 2, 6, 0), (3, 3, 5, 2), (3, 3, 7, 1), (1, 1, 3, 0), (1, 2, 3, 1)];
        let (d, l, dp, lp) = pairs[pick];
        prop_assert!(degeneracy_check(d, l, dp, lp, v0, 200, 1.0).unwrap() <= 1e-10);
    }

    #[test]
    fn width_scaling_law(depth in 1.0f64..100.0, lambda in 0.05f64..5.0, ell in 0u32..3, d in 2u32..4) {
        let h = 1.0;
        let direct = ground_with_width(depth, lambda, d, ell, 200, h);
        let w = WellSpec::new(depth / lambda, d, ell).unwrap();
        let unit = gwell_core::spectrum::mesh_eigenvalues(&w, MeshSpec::for_well(&w, 200, h * lambda.sqrt())).unwrap()[0];
        prop_assert!((direct - lambda * unit).abs() <= 1e-10 * direct.abs().max(1.0), "{direct} vs {}", lambda * unit);
    }

    #[test]
    fn ansatz_quadrature_doubling(v0 in 2.0f64..100.0, c in config()) {
        let w = WellSpec::new(v0, 3, 0).unwrap();
        prop_assume!(c.is_normalizable(&w));
        let base = QuadratureRule::half_line(24).unwrap();
        let fine = QuadratureRule::half_line(48).unwrap();
        let (e, _) = variational_energy(&w, &[c], &base).unwrap();
        let state = gwell_core::ansatz::SuperpositionState {
            configs: vec![c], linear_coeffs: vec![1.0], well: w, energy: e, kappa: 1.0,
            root: 0, overlap_condition: 1.0, flagged: false,
        };
        prop_assert!((reevaluate(&state, &fine).unwrap() - e).abs() < 1e-9);
    }

    #[test]
    fn constant_curve_recovered(beta in 0.5f64..50.0) {
        let s: Vec<(f64, f64)> = geometric_grid(1.0, 1.5, 8).into_iter().map(|h| (h, beta)).collect();
        let f = fit_h_series(&s).unwrap();
        prop_assert!((f.beta[0] - beta).abs() < 1e-10 * beta.max(1.0));
    }

    #[test]
    fn square_law_threshold_recovered(v0c in 0.5f64..50.0) {
        let samples: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let dl = 1e-3 * 300f64.powf(i as f64 / 29.0);
                (v0c + dl, -dl * dl)
            })
            .collect();
        let c = fit_threshold(3, 0, 1, v0c, &samples).unwrap();
        prop_assert!((c.values[0] + 1.0).abs() < 1e-10, "{:?}", c.values);
    }

    #[test]
    fn cusp_is_exact(gamma in -15.9f64..15.9, d1 in -2.0f64..2.0, d2 in 0.0f64..3.0) {
        let t = QDotTrial { gamma, delta1: d1, delta2: d2, ..QDotTrial::new(AnsatzConfig::new(2.0, 0.5, 1.0)) };
        prop_assert_eq!(cusp_log_derivative(&t), 0.5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn dot_energy_bounded_by_independent_electrons(
        alpha in 0.8f64..1.2, beta in 0.8f64..1.2, gamma in -0.5f64..1.0, d2 in 0.1f64..2.0,
    ) {
        let model = QDotModel::new(0.1, 8.0);
        let chi = gwell_core::qdot::freeze_orbital(&model).unwrap();
        let t = QDotTrial { alpha, beta, gamma, delta1: 0.0, delta2: d2, ..QDotTrial::new(chi) };
        let r = qdot_energy(&model, &t, QDotOrders::DEFAULT).unwrap();
        let floor = 2.0 * model.lambda * lmm_ground(model.v0(), 3, 0);
        prop_assert!(r.energy >= floor - 1e-9, "{} < {floor}", r.energy);
        prop_assert!(r.doubling_shift.unwrap() < 1e-4);
    }
}

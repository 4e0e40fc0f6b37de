//! Independent routes to the same physical quantity must agree.

use gwell_core::ansatz::{optimize_with, OptimizeOptions};
use gwell_core::deuteron::{binding_energy_ansatz, binding_energy_lmm, DeuteronModel};
use gwell_core::mesh::MeshSpec;
use gwell_core::qdot::{optimize_qdot_with, QDotModel, QDotOptimizeOptions};
use gwell_core::spectrum::{bound_energies, WellSpec};

/// `(v0, E, digits)` where `digits` counts the decimals a compact state reproduces.
type Column = [(f64, f64, i32)];

fn compact_column(d: u32, ell: u32, root: usize, rows: &Column) {
    for &(v0, e, digits) in rows {
        let w = WellSpec::new(v0, d, ell).unwrap();
        let opts = OptimizeOptions { root, ..Default::default() };
        let st = optimize_with(&w, root + 1, &opts).unwrap();
        let tol = 10f64.powi(-digits) + 5e-7;
        assert!((st.energy - e).abs() <= tol, "d={d} l={ell} v0={v0}: {} vs {e} (±{tol:e})", st.energy);
    }
}

#[test]
fn compact_state_3d_ground() {
    compact_column(
        3,
        0,
        0,
        &[(100.0, -79.738800, 6), (50.0, -35.958446, 5), (10.0, -4.280602, 4), (5.0, -1.271701, 4), (2.0, -0.075432, 3), (1.4, -0.000726, 3)],
    );
}

#[test]
fn compact_state_3d_first_excited_s() {
    compact_column(
        3,
        0,
        1,
        &[(100.0, -55.388745, 4), (50.0, -19.987486, 4), (15.0, -1.214669, 4), (12.5, -0.506521, 3), (10.0, -0.061198, 2), (9.0, -0.000608, 1)],
    );
}

#[test]
fn compact_state_3d_p() {
    compact_column(
        3,
        1,
        0,
        &[(100.0, -66.896220, 5), (50.0, -27.282428, 5), (10.0, -1.282861, 4), (7.5, -0.361014, 3), (6.5, -0.089254, 2), (6.1, -0.008031, 1)],
    );
}

#[test]
fn compact_state_2d() {
    compact_column(2, 0, 0, &[(100.0, -86.362354, 6), (10.0, -6.042272, 5), (1.0, -0.115386, 3)]);
    compact_column(2, 0, 1, &[(100.0, -61.196987, 6), (10.0, -0.635548, 4), (7.0, -0.041781, 2)]);
    compact_column(2, 1, 0, &[(100.0, -73.249069, 4), (10.0, -2.684722, 3), (5.0, -0.391199, 1)]);
}

#[test]
fn three_term_deuteron_matches_mesh() {
    for model in [DeuteronModel::lambda4(), DeuteronModel::lambda6()] {
        let lmm = binding_energy_lmm(&model).unwrap().energy;
        let k3 = binding_energy_ansatz(&model, 3).unwrap().energy;
        assert!(k3 >= lmm - 1e-9, "{k3} below {lmm}");
        assert!(k3 - lmm < 1e-4, "Lambda={}: {k3} vs {lmm}", model.lambda);
    }
}

#[test]
fn separable_dot_equals_two_orbitals() {
    for (lambda, depth) in [(0.1, 8.0), (0.5, 10.0)] {
        let model = QDotModel { coulomb: false, ..QDotModel::new(lambda, depth) };
        let r = optimize_qdot_with(&model, &QDotOptimizeOptions { restarts: 2, ..Default::default() }).unwrap();
        let w = WellSpec::new(model.v0(), 3, 0).unwrap();
        let e1 = bound_energies(&w, MeshSpec::for_well(&w, 300, 1.0)).unwrap()[0];
        let want = 2.0 * lambda * e1;
        assert!(r.energy >= want - 1e-9 && r.energy - want < 1e-4, "{} vs {want}", r.energy);
    }
}

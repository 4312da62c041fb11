mod common;

use nbtrace::generators::{cycle, petersen};
use nbtrace::graph::cartesian_product;
use nbtrace::kernels::{
    cjk_alternative_heat_coeff, heat_coeff, heat_coeff_envelope, heat_operator,
    heat_operator_oracle, schrodinger_coeff, schrodinger_operator, schrodinger_operator_oracle,
    tree_kernel_entry, KernelKind,
};
use nbtrace::ComplexMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-11;

fn shell_size(q: u64, d: usize) -> f64 {
    if d == 0 {
        1.0
    } else {
        (q + 1) as f64 * (q as f64).powi(d as i32 - 1)
    }
}

#[test]
fn tensor_identity_on_a_product() {
    let (g1, g2) = (cycle(3).unwrap(), cycle(4).unwrap());
    let prod = cartesian_product(&g1, &g2).unwrap();
    for t in [0.2, 0.9] {
        let h = heat_operator(&prod, t, TOL).unwrap();
        let k = heat_operator(&g1, t, TOL)
            .unwrap()
            .kron(&heat_operator(&g2, t, TOL).unwrap());
        assert!(h.max_abs_diff(&k) < 1e-10, "heat, t = {t}");
        let w = schrodinger_operator(&prod, t, TOL).unwrap();
        let k = schrodinger_operator(&g1, t, TOL)
            .unwrap()
            .kron(&schrodinger_operator(&g2, t, TOL).unwrap());
        assert!(w.max_abs_diff(&k) < 1e-10, "schrodinger, t = {t}");
    }
}

#[test]
fn operators_match_eigendecomposition() {
    for (name, g) in common::test_graphs() {
        let t = 0.8;
        let h = heat_operator(&g, t, TOL).unwrap();
        assert!(
            h.max_abs_diff(&heat_operator_oracle(&g, t).unwrap()) < 1e-10,
            "{name}"
        );
        let w = schrodinger_operator(&g, t, TOL).unwrap();
        assert!(
            w.max_abs_diff(&schrodinger_operator_oracle(&g, t).unwrap()) < 1e-10,
            "{name}"
        );
    }
}

#[test]
fn heat_operator_rejects_negative_time() {
    assert!(heat_operator(&petersen().unwrap(), -0.1, TOL).is_err());
}

#[test]
fn envelope_needs_branching() {
    assert!(heat_coeff_envelope(2, 1, 0.5).is_err());
    assert!(heat_coeff_envelope(2, 2, 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn heat_semigroup_and_stochasticity(g in common::random_graph(), s in 0.0f64..1.5, t in 0.0f64..1.5) {
        let hs = heat_operator(&g, s, TOL).unwrap();
        let ht = heat_operator(&g, t, TOL).unwrap();
        let hst = heat_operator(&g, s + t, TOL).unwrap();
        prop_assert!(hs.matmul(&ht).max_abs_diff(&hst) < 1e-10);
        for r in hst.row_sums() {
            prop_assert!((r - 1.0).abs() < 1e-10);
        }
        prop_assert!(hst.as_slice().iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn schrodinger_is_unitary(g in common::random_graph(), t in -2.0f64..2.0) {
        let w = schrodinger_operator(&g, t, TOL).unwrap();
        let id = ComplexMatrix::identity(g.n());
        prop_assert!(w.matmul(&w.adjoint()).max_abs_diff(&id) < 1e-10);
    }

    #[test]
    fn tree_kernels_conserve_mass(q in 1u64..=4, t in 0.05f64..1.5) {
        let mut heat = 0.0;
        let mut prob = 0.0;
        for d in 0..80 {
            let n = shell_size(q, d);
            heat += n * tree_kernel_entry(q, d, t, KernelKind::Heat).unwrap().re;
            prob += n * tree_kernel_entry(q, d, t, KernelKind::Schrodinger).unwrap().norm_sqr();
        }
        prop_assert!((heat - 1.0).abs() < 1e-10, "heat mass {}", heat);
        prop_assert!((prob - 1.0).abs() < 1e-10, "probability {}", prob);
    }

    #[test]
    fn alternative_heat_form(q in 1u64..=5, r in 0usize..=10, t in 0.0f64..3.0) {
        let a = heat_coeff(r, q, t).unwrap();
        let b = cjk_alternative_heat_coeff(r, q, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300) + 1e-300);
    }

    #[test]
    fn heat_coefficient_envelope(q in 2u64..=5, r in 0usize..=8, t in 0.1f64..3.0) {
        let (lo, hi) = heat_coeff_envelope(r, q, t).unwrap();
        let h = heat_coeff(r, q, t).unwrap();
        prop_assert!(lo * (1.0 - 1e-12) <= h && h <= hi * (1.0 + 1e-12), "{} <= {} <= {}", lo, h, hi);
    }

    #[test]
    fn schrodinger_q1_closed_form(r in 0usize..=10, t in -3.0f64..3.0) {
        let w = schrodinger_coeff(r, 1, t).unwrap();
        let want = nbtrace::bessel::i_pow(r) * Complex64::from_polar(1.0, -2.0 * t) * nbtrace::bessel::bessel_j(r, 2.0 * t);
        prop_assert!((w - want).norm() < 1e-13);
    }
}

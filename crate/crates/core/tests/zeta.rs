mod common;

use nbtrace::generators::{complete, complete_bipartite, cycle, petersen, torus};
use nbtrace::nbw::DEFAULT_BUDGET;
use nbtrace::numeric::rational_to_f64;
use nbtrace::zeta::{
    determinant_series, euler_product_series, log_zeta_from_determinant, ramanujan_check,
    stieltjes_zeta_check, zeta_log_series, zeta_reciprocal,
};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn ramanujan_verdicts() {
    for g in [
        complete(5).unwrap(),
        petersen().unwrap(),
        complete_bipartite(3).unwrap(),
        cycle(9).unwrap(),
    ] {
        assert!(ramanujan_check(&g).unwrap().is_ramanujan);
    }
    // torus(5, 2) is 4-regular with bound 2√3 and eigenvalue 2 + 2cos(2π/5) ≈ 2.62 < 3.46
    assert!(ramanujan_check(&torus(5, 2).unwrap()).unwrap().is_ramanujan);
    // two disjoint copies of K4: the second eigenvalue 3 is trivial-sized
    let v = ramanujan_check(
        &nbtrace::graph::build_graph(
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
            2,
        )
        .unwrap(),
    )
    .unwrap();
    assert!(!v.is_ramanujan);
    assert!((v.witness.unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn determinant_polynomial_matches_eigenvalues() {
    for (name, g) in common::test_graphs() {
        // 1/ζ is a polynomial of degree 2|E|
        let deg = 2 * g.edges().len();
        let series = determinant_series(&g, deg).unwrap().to_f64();
        for t in [Complex64::new(0.21, 0.05), Complex64::new(-0.4, 0.3)] {
            let poly = series
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c);
            let direct = zeta_reciprocal(&g, t).unwrap();
            assert!(
                (poly - direct).norm() < 1e-9 * direct.norm().max(1.0),
                "{name}, t = {t}"
            );
        }
    }
}

#[test]
fn stieltjes_routes_on_fixed_graphs() {
    for (name, g) in common::test_graphs() {
        let t = 0.3 / (g.q() as f64).sqrt();
        let c = stieltjes_zeta_check(&g, t, 60).unwrap();
        assert!((c.stieltjes - c.via_zeta).abs() < 1e-12, "{name}");
        assert!((c.stieltjes - c.via_circuits).abs() < 1e-12, "{name}");
    }
    assert!(stieltjes_zeta_check(&petersen().unwrap(), 0.8, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn log_series_routes_agree(g in common::random_graph()) {
        prop_assert_eq!(log_zeta_from_determinant(&g, 9).unwrap(), zeta_log_series(&g, 9).unwrap());
    }

    #[test]
    fn euler_product_matches_determinant(g in common::random_graph()) {
        prop_assert_eq!(euler_product_series(&g, 6, DEFAULT_BUDGET).unwrap(), determinant_series(&g, 6).unwrap());
    }

    #[test]
    fn constant_term_and_first_circuits(g in common::random_graph()) {
        let s = zeta_log_series(&g, 3).unwrap();
        prop_assert_eq!(rational_to_f64(&s.get(0)), 0.0);
        let d = determinant_series(&g, 0).unwrap();
        prop_assert_eq!(rational_to_f64(&d.get(0)), 1.0);
    }
}

#![allow(dead_code)]

use nbtrace::generators::{complete, cycle, petersen, torus};
use nbtrace::RegularGraph;

/// C_3, C_5, K_4, Petersen and the 4×4 torus.
pub fn test_graphs() -> Vec<(&'static str, RegularGraph)> {
    vec![
        ("C3", cycle(3).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("K4", complete(4).unwrap()),
        ("Petersen", petersen().unwrap()),
        ("torus(4,2)", torus(4, 2).unwrap()),
    ]
}

/// Prints the `[PASS]` line, or panics with the `[FAIL]` line.
pub fn verdict(label: &str, pass: bool, detail: &str) {
    if !pass {
        panic!("[FAIL] {label}: {detail}");
    }
    println!("[PASS] {label}: {detail}");
}

/// Random `(d)`-regular multigraphs from the configuration model, `n ≤ 9`.
pub fn random_graph() -> impl proptest::strategy::Strategy<Value = RegularGraph> {
    use proptest::prelude::*;
    (2usize..=4, 3usize..=9, any::<u64>()).prop_filter_map("n·d odd", |(d, n, seed)| {
        nbtrace::generators::random_regular(n, d, seed).ok()
    })
}

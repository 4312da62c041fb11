//! End-to-end acceptance checks, one function per criterion. Runs without
//! the libtest harness so the verdict lines always reach the output:
//! `cargo test -p nbtrace --test acceptance`.

mod common;

use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{test_graphs, verdict};
use nbtrace::bessel::{bessel_sequence, BesselKind};
use nbtrace::cheb::{cheb_eval_all, km_integrate};
use nbtrace::coeff::coeffs_a;
use nbtrace::generators::{complete, cycle, petersen, torus};
use nbtrace::graph::inverse;
use nbtrace::kernels::{
    cjk_alternative_heat_coeff, heat_coeff, heat_coeff_envelope, heat_operator,
    heat_operator_oracle, schrodinger_operator,
};
use nbtrace::lattice::{lattice_heat_entry, lattice_walk_count, tree_walk_count};
use nbtrace::nbw::{
    circuit_counts, circuits_from_primes, closed_from_circuits, closed_nbw_counts,
    enumerate_nbw_from, girth, nbw_matrix, prime_class_counts, DEFAULT_BUDGET,
};
use nbtrace::numeric::rational_to_f64;
use nbtrace::radial::{horocycle_transform, spherical_polynomial, RadialFunction};
use nbtrace::series::PowerSeries;
use nbtrace::spectral::{fourier_laplace, fourier_laplace_series, FourierRoute};
use nbtrace::trace::{pretrace, trace_formula, trace_formula_prime, truncation_radius};
use nbtrace::zeta::{determinant_series, log_zeta_from_determinant, zeta_log_series};
use nbtrace::{BasisTag, ComplexMatrix, Dense, FunctionSpec, RegularGraph};

/// Closed non-backtracking walks of each length `≤ r_max` whose last dart is
/// not the inverse of the first, by depth-first search over darts.
fn brute_circuits(g: &RegularGraph, r_max: usize) -> Vec<i128> {
    fn go(g: &RegularGraph, first: usize, last: usize, len: usize, r_max: usize, c: &mut [i128]) {
        let d = g.dart(last);
        if d.terminus == g.dart(first).origin && last != inverse(first) {
            c[len] += 1;
        }
        if len == r_max {
            return;
        }
        for &e in g.out_darts(d.terminus) {
            if e != inverse(last) {
                go(g, first, e, len + 1, r_max, c);
            }
        }
    }
    let mut c = vec![0i128; r_max + 1];
    for e in 0..g.darts().len() {
        go(g, e, e, 1, r_max, &mut c);
    }
    c
}

fn criterion_01_nbw_identities() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, g) in test_graphs() {
        for r in 0..=8 {
            let m = nbw_matrix(&g, r).unwrap();
            for a in 0..g.n() {
                let row = enumerate_nbw_from(&g, a, r, DEFAULT_BUDGET).unwrap();
                for (b, &count) in row.iter().enumerate() {
                    if m.get(a, b) != count as i128 {
                        ok = false;
                        notes.push(format!("{name} A_{r}[{a},{b}]"));
                    }
                }
            }
        }
        let f = closed_nbw_counts(&g, 8).unwrap().f;
        let c = brute_circuits(&g, 8);
        if closed_from_circuits(&c, g.n(), g.q()) != f {
            ok = false;
            notes.push(format!("{name}: closed walks vs circuits"));
        }
        if circuit_counts(&g, 8).unwrap().c != c {
            ok = false;
            notes.push(format!("{name}: circuit routes"));
        }
        let primes = prime_class_counts(&g, 8, DEFAULT_BUDGET).unwrap();
        if circuits_from_primes(&primes) != c {
            ok = false;
            notes.push(format!("{name}: prime classes"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 10.0;
    verdict(
        "1 NBW identity suite",
        ok,
        &format!("r <= 8 on 5 graphs in {secs:.2} s {notes:?}"),
    );
}

fn criterion_02_chebyshev_identity() {
    let mut worst = 0.0f64;
    for (_, g) in test_graphs() {
        let q = g.q() as f64;
        let m = g.adjacency().into_dense().scale(1.0 / q.sqrt());
        // X_r(M) by the plain recurrence, then X_{r,q} = X_r − X_{r−2}/q
        let mut plain = vec![Dense::<f64>::identity(g.n()), m.clone()];
        for r in 1..10 {
            let next = m.matmul(&plain[r]);
            let next = Dense::from_fn(g.n(), |i, j| next.get(i, j) - plain[r - 1].get(i, j));
            plain.push(next);
        }
        for r in 0..=10 {
            let x = if r >= 2 {
                Dense::from_fn(g.n(), |i, j| {
                    plain[r].get(i, j) - plain[r - 2].get(i, j) / q
                })
            } else {
                plain[r].clone()
            };
            let want = nbw_matrix(&g, r).unwrap().to_f64();
            worst = worst.max(want.max_abs_diff(&x.scale(q.powf(r as f64 / 2.0))));
        }
    }
    verdict(
        "2 Chebyshev identity",
        worst < 1e-9,
        &format!("max |A_r - q^(r/2) X_r,q(A/sqrt q)| = {worst:.2e}"),
    );
}

fn criterion_03_orthogonality() {
    let mut worst = 0.0f64;
    for basis in [
        BasisTag::Y,
        BasisTag::Xq(2),
        BasisTag::Xq(3),
        BasisTag::Xinf,
    ] {
        for m in 0..=8 {
            for n in 0..=8 {
                let v = km_integrate(
                    basis,
                    |x| {
                        let p = cheb_eval_all(basis, 8, x);
                        Complex64::new(p[m] * p[n], 0.0)
                    },
                    1e-13,
                )
                .unwrap();
                let want = match (m == n, m) {
                    (false, _) => 0.0,
                    (true, 0) => 1.0,
                    (true, _) => 1.0 + basis.qinv(),
                };
                worst = worst.max((v.re - want).abs());
            }
        }
    }
    verdict(
        "3 orthogonality",
        worst < 1e-10,
        &format!("max deviation {worst:.2e} over m,n <= 8, q in 1,2,3,inf"),
    );
}

fn criterion_04_master_reconstruction() {
    let h = FunctionSpec::exp(0.4);
    let mut worst = 0.0f64;
    let mut radii = Vec::new();
    for basis in [BasisTag::Y, BasisTag::Xq(2), BasisTag::Xinf] {
        let s = coeffs_a(&h, basis, 64).unwrap();
        // ±2.5 = ξ + 1/ξ at ξ = 2 = √4, so the tail is controlled as for q = 4
        let r = truncation_radius(&s, 4, 1e-10).unwrap();
        radii.push(r);
        for k in 0..=500 {
            let z = -2.5 + 5.0 * k as f64 / 500.0;
            let approx = s.eval_truncated(Complex64::new(z, 0.0), r);
            worst = worst.max((approx - (0.4 * z).exp()).norm());
        }
    }
    verdict(
        "4 reconstruction of exp(0.4x)",
        worst < 1e-8,
        &format!("sup error {worst:.2e} on [-2.5, 2.5] at R = {radii:?}"),
    );
}

fn criterion_05_trace_formulas() {
    let start = Instant::now();
    let tol = 1e-10;
    let fns = [
        ("exp(0.2x)", FunctionSpec::exp(0.2)),
        ("exp(0.5ix)", FunctionSpec::oscillatory_exp(0.5)),
        ("x^4", FunctionSpec::monomial(4)),
        ("Y_3", FunctionSpec::chebyshev(BasisTag::Y, 3)),
    ];
    let (mut circuit, mut prime, mut pre) = (0.0f64, 0.0f64, 0.0f64);
    let mut bound_ok = true;
    for (_, g) in test_graphs() {
        let vs = [0, g.n() / 2, g.n() - 1];
        for (_, h) in &fns {
            circuit = circuit.max(trace_formula(&g, h, tol).unwrap().residual);
            let p = trace_formula_prime(&g, h, tol, 12).unwrap();
            bound_ok &= p.residual <= tol + p.tail_bound;
            prime = prime.max(p.residual);
            for &v in &vs {
                pre = pre.max(pretrace(&g, v, h, tol).unwrap().residual);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "5 trace formulas",
        circuit < 1e-8 && prime < 1e-8 && pre < 1e-8 && bound_ok && secs < 30.0,
        &format!("residuals circuit {circuit:.2e}, prime {prime:.2e}, pre-trace {pre:.2e} in {secs:.2} s"),
    );
}

fn criterion_06_ihara_bass() {
    let mut ok = true;
    for (name, g) in test_graphs() {
        let a = log_zeta_from_determinant(&g, 10).unwrap();
        let b = zeta_log_series(&g, 10).unwrap();
        if a != b {
            ok = false;
            println!("{name}: log series differ");
        }
    }
    let det = determinant_series(&cycle(3).unwrap(), 12).unwrap();
    let want = {
        let one_minus =
            PowerSeries::from_integers(&[1, 0, 0, -1].map(num_bigint::BigInt::from), 12);
        &one_minus * &one_minus
    };
    let closed = det == want;
    verdict(
        "6 Ihara-Bass",
        ok && closed,
        &format!("exact log series through r = 10 on 5 graphs: {ok}; C3 gives (1-t^3)^2: {closed}"),
    );
}

fn criterion_07_heat_and_schrodinger() {
    let mut oracle = 0.0f64;
    for (_, g) in test_graphs() {
        for &t in &[0.25, 1.0, 3.0] {
            let h = heat_operator(&g, t, 1e-12).unwrap();
            oracle = oracle.max(h.max_abs_diff(&heat_operator_oracle(&g, t).unwrap()));
        }
    }
    let mut semigroup = 0.0f64;
    for g in [cycle(5).unwrap(), complete(4).unwrap()] {
        let (s, t) = (0.4, 0.9);
        let prod = heat_operator(&g, s, 1e-12)
            .unwrap()
            .matmul(&heat_operator(&g, t, 1e-12).unwrap());
        semigroup = semigroup.max(prod.max_abs_diff(&heat_operator(&g, s + t, 1e-12).unwrap()));
    }
    let (mut row, mut neg, mut unitary) = (0.0f64, 0.0f64, 0.0f64);
    for (_, g) in test_graphs() {
        let h = heat_operator(&g, 1.3, 1e-12).unwrap();
        for s in h.row_sums() {
            row = row.max((s - 1.0).abs());
        }
        neg = neg.min(h.as_slice().iter().copied().fold(0.0, f64::min));
        let u = schrodinger_operator(&g, 2.0, 1e-12).unwrap();
        let uu = u.adjoint().matmul(&u);
        unitary = unitary.max(uu.max_abs_diff(&ComplexMatrix::identity(g.n())));
    }
    let mut envelope = true;
    for q in [2, 3] {
        for &t in &[0.5, 1.0, 2.0] {
            for r in 0..=6 {
                let v = heat_coeff(r, q, t).unwrap();
                let (lo, hi) = heat_coeff_envelope(r, q, t).unwrap();
                envelope &= lo <= v && v <= hi;
            }
        }
    }
    let mut cjk = 0.0f64;
    for q in [2, 3] {
        for k in 0..=6 {
            let t = 0.5 * k as f64;
            for r in 0..=8 {
                cjk = cjk.max(
                    (heat_coeff(r, q, t).unwrap() - cjk_alternative_heat_coeff(r, q, t).unwrap())
                        .abs(),
                );
            }
        }
    }
    verdict(
        "7 heat and Schroedinger kernels",
        oracle < 1e-8
            && semigroup < 1e-8
            && row < 1e-10
            && neg >= -1e-12
            && unitary < 1e-8
            && envelope
            && cjk < 1e-10,
        &format!(
            "oracle {oracle:.2e}, semigroup {semigroup:.2e}, rows {row:.2e}, min entry {neg:.2e}, \
             unitarity {unitary:.2e}, envelope {envelope}, alternative form {cjk:.2e}"
        ),
    );
}

/// Walk counts from the origin of `Z^D` to every endpoint, by listing all
/// `(2D)^len` step sequences.
fn lattice_brute(dim: usize, len: u32) -> std::collections::HashMap<Vec<i64>, u64> {
    let mut out = std::collections::HashMap::new();
    let steps = 2 * dim as u64;
    for code in 0..steps.pow(len) {
        let mut p = vec![0i64; dim];
        let mut c = code;
        for _ in 0..len {
            let s = (c % steps) as usize;
            c /= steps;
            p[s / 2] += if s.is_multiple_of(2) { 1 } else { -1 };
        }
        *out.entry(p).or_insert(0) += 1;
    }
    out
}

/// Walks of length `len` from the root of the depth-`len` truncated
/// `(q+1)`-regular tree to a fixed vertex at distance `d`, by dynamic
/// programming over the explicit tree.
fn tree_brute(q: usize, d: usize, len: usize) -> u128 {
    let mut parent = vec![usize::MAX];
    let mut depth = vec![0usize];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    for level in 1..=len {
        let mut next = Vec::new();
        for &v in &frontier {
            let kids = if v == 0 { q + 1 } else { q };
            for _ in 0..kids {
                let id = parent.len();
                parent.push(v);
                depth.push(level);
                children.push(Vec::new());
                children[v].push(id);
                next.push(id);
            }
        }
        frontier = next;
    }
    // the target: first-child chain of length d
    let mut target = 0;
    for _ in 0..d {
        target = children[target][0];
    }
    let mut counts = vec![0u128; parent.len()];
    counts[0] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; parent.len()];
        for v in 0..parent.len() {
            if counts[v] == 0 {
                continue;
            }
            if parent[v] != usize::MAX {
                next[parent[v]] += counts[v];
            }
            for &c in &children[v] {
                next[c] += counts[v];
            }
        }
        counts = next;
    }
    counts[target]
}

fn criterion_08_lattice_and_tree() {
    let g = torus(16, 2).unwrap();
    let t = 0.25;
    let h = heat_operator(&g, t, 1e-14).unwrap();
    // direct comparison where every other image of the target lies far
    // enough away to stay under the budget, and an image sum everywhere
    let budget = 1e-12;
    let (mut heat, mut periodic, mut compared) = (0.0f64, 0.0f64, 0);
    for i in 0..16i64 {
        for j in 0..16i64 {
            let wrap = |a: i64| if a > 8 { a - 16 } else { a };
            let (a, b) = (wrap(i), wrap(j));
            let torus_entry = h.get(0, (i * 16 + j) as usize);
            let near = 16 - a.abs().max(b.abs());
            // each of the other images is at most the 1-d kernel at distance `near`
            let wrap_bound = 8.0 * lattice_heat_entry(&[0], &[near], t).unwrap();
            if wrap_bound < budget {
                let v = lattice_heat_entry(&[0, 0], &[a, b], t).unwrap();
                heat = heat.max((torus_entry - v).abs());
                compared += 1;
            }
            let mut images = 0.0;
            for da in -1..=1 {
                for db in -1..=1 {
                    images += lattice_heat_entry(&[0, 0], &[a + 16 * da, b + 16 * db], t).unwrap();
                }
            }
            periodic = periodic.max((torus_entry - images).abs());
        }
    }
    let mut walks = true;
    for dim in 1..=2 {
        for len in 0..=8 {
            for (p, count) in lattice_brute(dim, len) {
                walks &= lattice_walk_count(&vec![0; dim], &p, len as u64).unwrap() == count.into();
            }
            // an unreachable endpoint
            walks &= lattice_walk_count(&vec![0; dim], &vec![len as i64 + 1; dim], len as u64)
                .unwrap()
                .is_zero();
        }
    }
    let mut tree = true;
    for q in 1..=3usize {
        for len in 0..=8usize {
            for d in (len % 2..=len).step_by(2) {
                let k = (len - d) / 2;
                tree &= tree_walk_count(q as u64, d as u64, k as u64).unwrap()
                    == tree_brute(q, d, len).into();
            }
        }
    }
    verdict(
        "8 lattice kernels and counts",
        heat < 1e-10 && periodic < 1e-10 && compared > 0 && walks && tree,
        &format!(
            "torus(16,2) heat deviation {heat:.2e} on {compared} entries, image sum {periodic:.2e}, \
             lattice counts {walks}, tree counts {tree}"
        ),
    );
}

fn criterion_09_fourier_and_girth() {
    let mut worst = 0.0f64;
    let ps = [
        Complex64::new(0.3, 0.0),
        Complex64::new(-1.1, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.8, 0.6),
        Complex64::new(0.0, -1.5),
    ];
    for (_, g) in test_graphs() {
        for &p in &ps {
            let a = fourier_laplace(&g, p, FourierRoute::Eigen, 1e-12).unwrap();
            let b = fourier_laplace(&g, p, FourierRoute::BesselSeries, 1e-12).unwrap();
            worst = worst.max((a - b).norm());
        }
    }
    let mut orders = true;
    let mut seen = Vec::new();
    for g in [cycle(5).unwrap(), complete(4).unwrap(), petersen().unwrap()] {
        let s = fourier_laplace_series(&g, Complex64::new(1.0, 0.0), 1e-12).unwrap();
        let c = circuit_counts(&g, s.terms.len() - 1).unwrap().c;
        let lead = s.leading_order(&c);
        let gth = girth(&g).unwrap();
        orders &= lead == Some(gth)
            && s.terms[1..gth].iter().all(|t| t.is_zero())
            && !s.terms[gth].is_zero();
        seen.push((lead, gth));
    }
    verdict(
        "9 Fourier-Laplace and girth",
        worst < 1e-8 && orders,
        &format!("route difference {worst:.2e}, (leading order, girth) = {seen:?}"),
    );
}

fn criterion_10_bessel_identities() {
    let zs = [
        Complex64::new(0.3, 0.0),
        Complex64::new(2.5, 0.0),
        Complex64::new(-4.0, 0.0),
        Complex64::new(9.5, 0.0),
        Complex64::new(1.2, 2.1),
    ];
    let mut worst = 0.0f64;
    for &z in &zs {
        let i = bessel_sequence(BesselKind::I, 10, z).unwrap();
        let i2 = bessel_sequence(BesselKind::I, 120, z * 2.0).unwrap();
        for n in 0..=6 {
            let lhs = i[n] - i[n + 2];
            let rhs = i[n + 1] * (2.0 * (n + 1) as f64) / z;
            worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
            let sum: Complex64 = (0..55)
                .map(|k| i2[n + 2 * k + 1] * (n + 2 * k + 1) as f64)
                .sum();
            let lhs = z * i2[n];
            worst = worst.max((lhs - sum).norm() / lhs.norm().max(1.0));
        }
    }
    verdict(
        "10 Bessel identities",
        worst < 1e-10,
        &format!("max relative deviation {worst:.2e}, n <= 6, 5 points"),
    );
}

fn criterion_11_horocycle_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for q in [2u64, 3] {
        for _ in 0..10 {
            let len = rng.random_range(1..=6);
            let vals: Vec<i64> = (0..len).map(|_| rng.random_range(-4..=4)).collect();
            let f = RadialFunction::from_integers(q, &vals).unwrap();
            let hf = horocycle_transform(&f);
            let h = spherical_polynomial(&f);
            let a1 = coeffs_a(&h, BasisTag::Y, 12).unwrap();
            let aq = coeffs_a(&h, BasisTag::for_q(q), 12).unwrap();
            for n in 0..=12 {
                let w = (q as f64).powf(-(n as f64) / 2.0);
                let hn = rational_to_f64(&hf.at(n as i64));
                let fn_ = rational_to_f64(&f.get(n));
                worst = worst
                    .max((a1.get(n) * w - hn).norm())
                    .max((aq.get(n) * w - fn_).norm());
            }
        }
    }
    verdict(
        "11 horocycle and spherical relations",
        worst < 1e-9,
        &format!("max deviation {worst:.2e} over 20 random radial functions, q in 2,3"),
    );
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn()); 11] = [
        ("1", criterion_01_nbw_identities),
        ("2", criterion_02_chebyshev_identity),
        ("3", criterion_03_orthogonality),
        ("4", criterion_04_master_reconstruction),
        ("5", criterion_05_trace_formulas),
        ("6", criterion_06_ihara_bass),
        ("7", criterion_07_heat_and_schrodinger),
        ("8", criterion_08_lattice_and_tree),
        ("9", criterion_09_fourier_and_girth),
        ("10", criterion_10_bessel_identities),
        ("11", criterion_11_horocycle_relations),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (label, check) in criteria {
        if let Err(payload) = std::panic::catch_unwind(check) {
            failed += 1;
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            if msg.starts_with("[FAIL]") {
                println!("{msg}");
            } else {
                println!("[FAIL] {label}: panicked: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}

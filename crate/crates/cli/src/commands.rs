//! One function per subcommand, each turning parsed arguments into a
//! [`Report`].

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use serde_json::{json, Value};

use nbtrace::eigen::{eigenvalues_symmetric, DEFAULT_TOL};
use nbtrace::io::read_edge_list;
use nbtrace::kernels::{
    heat_coeffs, heat_operator, heat_operator_oracle, schrodinger_coeffs, schrodinger_operator,
    schrodinger_operator_oracle,
};
use nbtrace::lattice::{lattice_heat_entry, lattice_walk_count, tree_walk_count};
use nbtrace::nbw::{
    circuits_from_closed, circuits_from_primes, circuits_spectral, closed_nbw_counts, girth,
    nbw_matrices, prime_class_counts, walk_count_from, DEFAULT_BUDGET,
};
use nbtrace::series::PowerSeries;
use nbtrace::spectral::{
    fourier_laplace, fourier_laplace_series, heat_trace, spectral_measure_from,
    stieltjes_series_check, FourierRoute, HeatRoute,
};
use nbtrace::trace::{pretrace, trace_formula, trace_formula_prime};
use nbtrace::zeta::{
    determinant_series, euler_product_series, log_zeta_from_determinant, ramanujan_check,
    stieltjes_zeta_check, zeta_log_series, zeta_reciprocal_from,
};
use nbtrace::{ComplexMatrix, Family, RegularGraph};

use crate::error::CliError;
use crate::funcspec::parse_fn;
use crate::report::{complex, int, GraphInfo, Report};
use crate::{Cli, Command, Common, Kind};

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be a positive number, got {}",
            c.tol
        )));
    }
    match &cli.command {
        Command::Graph { edges } => graph(&load_graph(c)?, *edges),
        Command::Nbw => nbw(&load_graph(c)?, c.rmax.unwrap_or(10)),
        Command::Spectrum => spectrum(&load_graph(c)?, c),
        Command::Trace {
            func,
            vertex,
            horizon,
        } => trace(&load_graph(c)?, c, func, *vertex, *horizon),
        Command::Zeta { points } => zeta(&load_graph(c)?, c.rmax.unwrap_or(10), points),
        Command::Heat {
            t,
            kind,
            vertex,
            tree,
            lattice,
        } => match (tree, lattice) {
            (Some(q), _) => heat_tree(*q, *t, *kind, c.rmax.unwrap_or(8)),
            (_, Some(offset)) => heat_lattice(offset, *t, *kind),
            _ => heat_graph(&load_graph(c)?, c, *t, *kind, *vertex),
        },
        Command::Walks {
            from,
            to,
            tree,
            distance,
            lattice,
        } => {
            let len = c.rmax.unwrap_or(8);
            match (tree, lattice) {
                (Some(q), _) => walks_tree(*q, *distance, len),
                (_, Some(offset)) => walks_lattice(offset, len),
                _ => walks_graph(&load_graph(c)?, *from, *to, len),
            }
        }
        Command::Fourier { p } => fourier(&load_graph(c)?, c, *p),
    }
}

/// Reads `--input` or builds `--generate`; `--seed` fills in the seed of a
/// `random_regular` family that names none.
fn load_graph(c: &Common) -> Result<RegularGraph, CliError> {
    match (&c.input, &c.generate) {
        (Some(path), _) => Ok(read_edge_list(path)?),
        (None, Some(spec)) => {
            let mut family: Family = spec.parse()?;
            if let Family::RandomRegular { seed, .. } = &mut family {
                let given = spec
                    .split_once(':')
                    .map_or(0, |(_, a)| a.split(',').count());
                if given == 2 {
                    *seed = c.seed;
                }
            }
            Ok(family.generate()?)
        }
        (None, None) => Err(CliError::Usage(
            "this command needs --input FILE or --generate FAMILY".into(),
        )),
    }
}

fn info(g: &RegularGraph) -> Option<GraphInfo> {
    Some(GraphInfo { n: g.n(), q: g.q() })
}

fn check_vertex(g: &RegularGraph, v: usize) -> Result<(), CliError> {
    if v >= g.n() {
        return Err(nbtrace::Error::VertexOutOfRange { index: v, n: g.n() }.into());
    }
    Ok(())
}

fn rationals(s: &PowerSeries) -> Value {
    json!(s.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn ints(v: &[i128]) -> Value {
    Value::Array(v.iter().map(|&x| int(x)).collect())
}

fn ramanujan(g: &RegularGraph) -> Result<Value, CliError> {
    let v = ramanujan_check(g)?;
    Ok(json!({ "is_ramanujan": v.is_ramanujan, "witness": v.witness, "bound": v.bound }))
}

fn graph(g: &RegularGraph, with_edges: bool) -> Result<Report, CliError> {
    let mut r = Report::new("graph", info(g));
    r.result("n", g.n());
    r.result("q", g.q());
    r.result("degree", g.degree());
    r.result("edges", g.edges().len());
    r.result("girth", girth(g)?);
    r.result("bipartite", g.is_bipartite());
    r.result("connected", g.is_connected());
    r.result("ramanujan", ramanujan(g)?);
    if with_edges {
        r.result("edge_list", json!(g.edges()));
    }
    Ok(r)
}

fn nbw(g: &RegularGraph, r_max: usize) -> Result<Report, CliError> {
    let q = g.q();
    let table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, q)?;
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let spectral = circuits_spectral(&ev, q, r_max);
    let primes = prime_class_counts(g, r_max, DEFAULT_BUDGET)?;
    let from_primes = circuits_from_primes(&primes);

    let mut r = Report::new("nbw", info(g));
    r.result("f_r", ints(&table.f));
    r.result("c_r", ints(&c));
    r.result("prime_classes", json!(primes));
    r.result("girth", girth(g)?);
    let dev = c
        .iter()
        .zip(&spectral)
        .map(|(&e, s)| (e as f64 - s).abs() / (e as f64).abs().max(1.0))
        .fold(0.0, f64::max);
    r.residual("circuits_spectral", dev);
    let mismatches = (1..=r_max)
        .filter(|&k| from_primes.get(k) != c.get(k))
        .count();
    r.residual("circuits_from_primes", mismatches as f64);
    Ok(r)
}

fn spectrum(g: &RegularGraph, c: &Common) -> Result<Report, CliError> {
    let q = g.q() as f64;
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let mu = spectral_measure_from(&ev, g.q())?;
    let mut r = Report::new("spectrum", info(g));
    r.result("eigenvalues", json!(ev));
    r.result(
        "measure",
        json!(mu.atoms.iter().map(|&(x, w)| [x, w]).collect::<Vec<_>>()),
    );

    // samples at t·√q = 0.1, 0.2, 0.3, circuit series cut where 0.3^r is negligible
    let r_series = ((c.tol * 1e-3).ln() / 0.3f64.ln()).ceil().max(8.0) as usize;
    let mut samples = Vec::new();
    let mut worst = 0.0f64;
    for k in 1..=3 {
        let t = 0.1 * k as f64 / q.sqrt();
        let s = stieltjes_zeta_check(g, t, r_series)?;
        worst = worst
            .max((s.stieltjes - s.via_zeta).abs())
            .max((s.stieltjes - s.via_circuits).abs());
        samples.push(json!({ "t": t, "direct": s.stieltjes, "via_zeta": s.via_zeta, "via_circuits": s.via_circuits }));
    }
    r.result("stieltjes", Value::Array(samples));
    r.residual("stieltjes_routes", worst);
    let series = stieltjes_series_check(g, c.rmax.unwrap_or(12))?;
    r.residual("stieltjes_coefficients", series.max_deviation);
    Ok(r)
}

fn trace(
    g: &RegularGraph,
    c: &Common,
    func: &str,
    vertex: usize,
    horizon: usize,
) -> Result<Report, CliError> {
    let h = parse_fn(func)?;
    check_vertex(g, vertex)?;
    let circuit = trace_formula(g, &h, c.tol)?;
    let prime = trace_formula_prime(g, &h, c.tol, horizon)?;
    let pre = pretrace(g, vertex, &h, c.tol)?;
    let mut r = Report::new("trace", info(g));
    r.result("function", func);
    r.result(
        "circuit",
        json!({ "lhs": complex(circuit.lhs), "rhs": complex(circuit.rhs), "terms": circuit.terms }),
    );
    r.result(
        "prime",
        json!({
            "lhs": complex(prime.lhs),
            "rhs": complex(prime.rhs),
            "residual": prime.residual,
            "horizon": prime.horizon,
            "tail_bound": prime.tail_bound,
            "prime_classes": prime.prime_counts,
        }),
    );
    r.result(
        "pretrace",
        json!({ "vertex": vertex, "lhs": complex(pre.lhs), "rhs": complex(pre.rhs), "terms": pre.terms }),
    );
    r.residual("circuit", circuit.residual);
    r.residual("pretrace", pre.residual);
    r.residual(
        "prime_beyond_tail_bound",
        (prime.residual - prime.tail_bound).max(0.0),
    );
    Ok(r)
}

fn zeta(g: &RegularGraph, r_max: usize, points: &[f64]) -> Result<Report, CliError> {
    let log = zeta_log_series(g, r_max)?;
    let via_det = log_zeta_from_determinant(g, r_max)?;
    let det = determinant_series(g, r_max)?;
    let euler = euler_product_series(g, r_max, DEFAULT_BUDGET)?;
    // 1/ζ is a polynomial of degree 2|E|
    let full = determinant_series(g, 2 * g.edges().len())?.to_f64();
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;

    let mut values = Vec::new();
    let mut worst = 0.0f64;
    for &t in points {
        let tc = Complex64::new(t, 0.0);
        let eig = zeta_reciprocal_from(&ev, g.q(), tc)?.re;
        let poly = full.iter().rev().fold(0.0, |acc, &a| acc * t + a);
        worst = worst.max((eig - poly).abs() / poly.abs().max(1.0));
        values.push(json!({ "t": t, "eigenvalues": eig, "polynomial": poly }));
    }

    let mut r = Report::new("zeta", info(g));
    r.result("log_series", rationals(&log));
    r.result("reciprocal_series", rationals(&det));
    r.result("reciprocal_values", Value::Array(values));
    r.result("ramanujan", ramanujan(g)?);
    r.residual("log_series_routes", if log == via_det { 0.0 } else { 1.0 });
    r.residual("euler_product", if euler == det { 0.0 } else { 1.0 });
    r.residual("reciprocal_values", worst);
    Ok(r)
}

fn heat_graph(
    g: &RegularGraph,
    c: &Common,
    t: f64,
    kind: Kind,
    vertex: usize,
) -> Result<Report, CliError> {
    check_vertex(g, vertex)?;
    let r_max = c.rmax.unwrap_or(8);
    let mut r = Report::new("heat", info(g));
    r.result("t", t);
    match kind {
        Kind::Heat => {
            let op = heat_operator(g, t, c.tol)?;
            let oracle = heat_operator_oracle(g, t)?;
            let series = heat_trace(g, t, HeatRoute::Series, c.tol)?;
            let eigen = heat_trace(g, t, HeatRoute::Eigen, c.tol)?;
            r.result("kind", "heat");
            r.result("row", json!(op.row(vertex)));
            r.result("trace", json!({ "series": series, "eigenvalues": eigen }));
            r.result("tree_coefficients", json!(heat_coeffs(r_max, g.q(), t)?));
            r.residual("oracle", op.max_abs_diff(&oracle));
            let rows = op
                .row_sums()
                .iter()
                .map(|s| (s - 1.0).abs())
                .fold(0.0, f64::max);
            r.residual("row_sums", rows);
            r.residual(
                "trace_routes",
                (series - eigen).abs() / eigen.abs().max(1.0),
            );
        }
        Kind::Schrodinger => {
            let op = schrodinger_operator(g, t, c.tol)?;
            let oracle = schrodinger_operator_oracle(g, t)?;
            let coeffs = schrodinger_coeffs(r_max, g.q(), t)?;
            r.result("kind", "schrodinger");
            r.result(
                "row",
                Value::Array(op.row(vertex).iter().map(|&z| complex(z)).collect()),
            );
            r.result("trace", complex(op.trace()));
            r.result(
                "tree_coefficients",
                Value::Array(coeffs.into_iter().map(complex).collect()),
            );
            r.residual("oracle", op.max_abs_diff(&oracle));
            let id = ComplexMatrix::identity(g.n());
            r.residual("unitarity", op.matmul(&op.adjoint()).max_abs_diff(&id));
        }
    }
    Ok(r)
}

/// `ln |S_d|` for the sphere of radius `d` in the `(q+1)`-regular tree.
fn ln_shell(q: u64, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        ((q + 1) as f64).ln() + (d - 1) as f64 * (q as f64).ln()
    }
}

fn heat_tree(q: u64, t: f64, kind: Kind, r_max: usize) -> Result<Report, CliError> {
    if q == 0 {
        return Err(CliError::Usage("--tree needs q >= 1".into()));
    }
    // far enough out that the remaining shells carry no visible mass
    let cut = r_max.max(40 + (4.0 * (q + 1) as f64 * t.abs()).ceil() as usize);
    let mut r = Report::new("heat", None);
    r.result("tree_q", q);
    r.result("t", t);
    let weigh = |d: usize, x: f64| {
        if x == 0.0 {
            0.0
        } else {
            (ln_shell(q, d) + x.ln()).exp()
        }
    };
    let mass = match kind {
        Kind::Heat => {
            let h = heat_coeffs(cut, q, t)?;
            r.result("kind", "heat");
            r.result("entries", json!(h[..=r_max]));
            h.iter()
                .enumerate()
                .map(|(d, &x)| weigh(d, x.abs()) * x.signum())
                .sum::<f64>()
        }
        Kind::Schrodinger => {
            let w = schrodinger_coeffs(cut, q, t)?;
            r.result("kind", "schrodinger");
            r.result(
                "entries",
                Value::Array(w[..=r_max].iter().map(|&z| complex(z)).collect()),
            );
            w.iter()
                .enumerate()
                .map(|(d, z)| weigh(d, z.norm_sqr()))
                .sum::<f64>()
        }
    };
    r.result("mass", mass);
    r.residual("mass", (mass - 1.0).abs());
    Ok(r)
}

fn heat_lattice(offset: &[i64], t: f64, kind: Kind) -> Result<Report, CliError> {
    if kind != Kind::Heat {
        return Err(CliError::Usage(
            "--lattice supports only --kind heat".into(),
        ));
    }
    let origin = vec![0; offset.len()];
    let mut r = Report::new("heat", None);
    r.result("kind", "heat");
    r.result("lattice_offset", json!(offset));
    r.result("t", t);
    r.result("entry", lattice_heat_entry(&origin, offset, t)?);
    Ok(r)
}

fn walks_graph(g: &RegularGraph, from: usize, to: usize, len: usize) -> Result<Report, CliError> {
    check_vertex(g, from)?;
    check_vertex(g, to)?;
    let mats = nbw_matrices(g, len)?;
    let counts: Vec<BigInt> = (0..=len)
        .map(|n| walk_count_from(&mats, g.q(), from, to, n))
        .collect();
    // oracle: (Aⁿ e_to)_from, multiplying through the adjacency lists
    let mut v = vec![BigInt::from(0); g.n()];
    v[to] = BigInt::from(1);
    let mut mismatches = 0usize;
    for count in &counts {
        if v[from] != *count {
            mismatches += 1;
        }
        v = (0..g.n())
            .map(|a| g.out_darts(a).iter().map(|&e| &v[g.dart(e).terminus]).sum())
            .collect();
    }
    let mut r = Report::new("walks", info(g));
    r.result("from", from);
    r.result("to", to);
    r.result(
        "counts",
        json!(counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    );
    r.residual("adjacency_powers", mismatches as f64);
    Ok(r)
}

fn walks_tree(q: u64, d: u64, len: usize) -> Result<Report, CliError> {
    let mut counts = Vec::with_capacity(len + 1);
    for n in 0..=len as u64 {
        counts.push(if n >= d && (n - d).is_multiple_of(2) {
            tree_walk_count(q, d, (n - d) / 2)?
        } else {
            BigInt::from(0)
        });
    }
    // oracle: distance to the target, one neighbour closer and q (or q+1 at
    // the target itself) farther
    let width = d as usize + len + 2;
    let mut cur = vec![BigInt::from(0); width];
    cur[d as usize] = BigInt::from(1);
    let mut mismatches = 0usize;
    for count in &counts {
        if cur[0] != *count {
            mismatches += 1;
        }
        let mut next = vec![BigInt::from(0); width];
        for (k, w) in cur.iter().enumerate().filter(|(k, _)| k + 1 < width) {
            if k == 0 {
                next[1] += w * (q + 1);
            } else {
                next[k - 1] += w;
                next[k + 1] += w * q;
            }
        }
        cur = next;
    }
    let mut r = Report::new("walks", None);
    r.result("tree_q", q);
    r.result("distance", d);
    r.result(
        "counts",
        json!(counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    );
    r.residual("distance_chain", mismatches as f64);
    Ok(r)
}

fn walks_lattice(offset: &[i64], len: usize) -> Result<Report, CliError> {
    let origin = vec![0; offset.len()];
    let counts: Vec<BigUint> = (0..=len as u64)
        .map(|n| lattice_walk_count(&origin, offset, n))
        .collect::<Result<_, _>>()?;
    let mut r = Report::new("walks", None);
    r.result("lattice_offset", json!(offset));
    r.result(
        "counts",
        json!(counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    );
    Ok(r)
}

fn fourier(g: &RegularGraph, c: &Common, p: f64) -> Result<Report, CliError> {
    let pc = Complex64::new(p, 0.0);
    let eigen = fourier_laplace(g, pc, FourierRoute::Eigen, c.tol)?;
    let series = fourier_laplace_series(g, pc, c.tol)?;
    let r_max = series.terms.len() - 1;
    let table = closed_nbw_counts(g, r_max)?;
    let circuits = circuits_from_closed(&table.f, g.q())?;
    let mut r = Report::new("fourier", info(g));
    r.result("p", p);
    r.result("eigenvalues", complex(eigen));
    r.result("series", complex(series.value));
    r.result("background", complex(series.background));
    r.result("terms", r_max);
    r.result("tail_bound", series.tail_bound);
    r.result("leading_order", json!(series.leading_order(&circuits)));
    r.result("girth", girth(g)?);
    r.residual("routes", (eigen - series.value).norm());
    Ok(r)
}

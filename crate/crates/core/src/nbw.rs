//! Non-backtracking walks: the matrices `A_r`, brute-force enumeration,
//! closed-walk, circuit and prime-circuit counts, girth, and walk counts.
//!
//! `A_r` comes from the integer recurrence `A_0 = I`, `A_1 = A`,
//! `A_2 = A² − (q+1)I`, `A_{r+1} = A·A_r − q·A_{r−1}`, computed exactly in
//! `i128`. The enumerators below never look at `A` and serve as oracles.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cheb::{km_y_moment, BasisTag};
use crate::eigen::{eigenvalues_symmetric, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::{inverse, RegularGraph};
use crate::matrix::IntMatrix;
use crate::numeric::ballot;

/// Default node cap for the exponential enumerators.
pub const DEFAULT_BUDGET: u64 = 500_000_000;

/// `A·M` using the adjacency lists (loops contribute twice).
fn adj_mul(g: &RegularGraph, m: &IntMatrix) -> Result<IntMatrix> {
    let n = g.n();
    let mut out = IntMatrix::zeros(n);
    for a in 0..n {
        let mut row = vec![0i128; n];
        for &e in g.out_darts(a) {
            let b = g.dart(e).terminus;
            for (dst, &x) in row.iter_mut().zip(m.row(b)) {
                *dst = dst
                    .checked_add(x)
                    .ok_or(Error::Overflow("non-backtracking matrix"))?;
            }
        }
        for (j, x) in row.into_iter().enumerate() {
            out.set(a, j, x);
        }
    }
    Ok(out)
}

/// `A_0, …, A_{r_max}`.
pub fn nbw_matrices(g: &RegularGraph, r_max: usize) -> Result<Vec<IntMatrix>> {
    let n = g.n();
    let q = g.q() as i128;
    let mut out = vec![IntMatrix::identity(n)];
    if r_max == 0 {
        return Ok(out);
    }
    out.push(g.int_adjacency());
    for r in 1..r_max {
        let mut next = adj_mul(g, &out[r])?;
        // A_2 subtracts (q+1)·A_0, later steps q·A_{r−1}
        let coef = if r == 1 { q + 1 } else { q };
        for i in 0..n {
            for j in 0..n {
                let v = coef
                    .checked_mul(out[r - 1].get(i, j))
                    .and_then(|s| next.get(i, j).checked_sub(s))
                    .ok_or(Error::Overflow("non-backtracking matrix"))?;
                next.set(i, j, v);
            }
        }
        out.push(next);
    }
    Ok(out)
}

pub fn nbw_matrix(g: &RegularGraph, r: usize) -> Result<IntMatrix> {
    Ok(nbw_matrices(g, r)?.pop().expect("nonempty"))
}

/// Counts, for every endpoint `b`, the non-backtracking walks of length `r`
/// from `a` to `b` by depth-first search over darts.
pub fn enumerate_nbw_from(g: &RegularGraph, a: usize, r: usize, cap: u64) -> Result<Vec<u128>> {
    if a >= g.n() {
        return Err(Error::VertexOutOfRange { index: a, n: g.n() });
    }
    let mut counts = vec![0u128; g.n()];
    if r == 0 {
        counts[a] = 1;
        return Ok(counts);
    }
    let mut nodes = 0u64;
    // stack of (dart just traversed, depth)
    let mut stack: Vec<(usize, usize)> = g.out_darts(a).iter().map(|&e| (e, 1)).collect();
    while let Some((e, depth)) = stack.pop() {
        nodes += 1;
        if nodes > cap {
            return Err(Error::BudgetExceeded { cap });
        }
        let v = g.dart(e).terminus;
        if depth == r {
            counts[v] += 1;
            continue;
        }
        let back = inverse(e);
        for &f in g.out_darts(v) {
            if f != back {
                stack.push((f, depth + 1));
            }
        }
    }
    Ok(counts)
}

pub fn enumerate_nbw(g: &RegularGraph, a: usize, b: usize, r: usize, cap: u64) -> Result<u128> {
    if b >= g.n() {
        return Err(Error::VertexOutOfRange { index: b, n: g.n() });
    }
    Ok(enumerate_nbw_from(g, a, r, cap)?[b])
}

/// `f_r(G)`, `f_r(v; G)` and `c_r(G)` for `r ≤ r_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbwCountTable {
    pub n: usize,
    pub q: u64,
    /// `f[r] = f_r(G) = tr A_r`
    pub f: Vec<i128>,
    /// `f_vertex[r][v] = (A_r)_{vv}`
    pub f_vertex: Vec<Vec<i128>>,
    /// `c[r] = c_r(G)`, empty until circuits are filled in
    pub c: Vec<i128>,
}

impl NbwCountTable {
    pub fn r_max(&self) -> usize {
        self.f.len() - 1
    }
}

pub fn closed_nbw_counts(g: &RegularGraph, r_max: usize) -> Result<NbwCountTable> {
    let mats = nbw_matrices(g, r_max)?;
    let f_vertex: Vec<Vec<i128>> = mats
        .iter()
        .map(|m| (0..g.n()).map(|v| m.get(v, v)).collect())
        .collect();
    let f = f_vertex.iter().map(|d| d.iter().sum()).collect();
    Ok(NbwCountTable {
        n: g.n(),
        q: g.q(),
        f,
        f_vertex,
        c: Vec::new(),
    })
}

/// Inverts `f_r = c_r + (q−1)Σ_{1≤i<r/2} q^{i−1} c_{r−2i}` for `c`.
pub fn circuits_from_closed(f: &[i128], q: u64) -> Result<Vec<i128>> {
    let q = q as i128;
    let mut c = vec![0i128; f.len()];
    for r in 1..f.len() {
        let mut s: i128 = 0;
        let mut qpow: i128 = 1;
        let mut i = 1;
        while 2 * i < r {
            s = qpow
                .checked_mul(c[r - 2 * i])
                .and_then(|t| s.checked_add(t))
                .ok_or(Error::Overflow("circuit inversion"))?;
            qpow = qpow
                .checked_mul(q)
                .ok_or(Error::Overflow("circuit inversion"))?;
            i += 1;
        }
        c[r] = (q - 1)
            .checked_mul(s)
            .and_then(|t| f[r].checked_sub(t))
            .ok_or(Error::Overflow("circuit inversion"))?;
    }
    Ok(c)
}

/// Recomputes `f` from `c` by the forward relation.
pub fn closed_from_circuits(c: &[i128], n: usize, q: u64) -> Vec<i128> {
    let q = q as i128;
    (0..c.len())
        .map(|r| {
            if r == 0 {
                return n as i128;
            }
            let mut s = 0i128;
            let mut i = 1;
            while 2 * i < r {
                s += q.pow(i as u32 - 1) * c[r - 2 * i];
                i += 1;
            }
            c[r] + (q - 1) * s
        })
        .collect()
}

/// `c_r = Σ_k q^{r/2}Y_r(q^{-1/2}λ_k) − |V| q^{r/2}∫Y_r dμ_q`, evaluated
/// through `P_r(λ) = q^{r/2}X_r(q^{-1/2}λ)`, which obeys
/// `P_{r+1} = λP_r − qP_{r−1}`.
pub fn circuits_spectral(eigenvalues: &[f64], q: u64, r_max: usize) -> Vec<f64> {
    let qf = q as f64;
    let n = eigenvalues.len() as f64;
    let mut sums = vec![0.0; r_max + 1];
    for &lam in eigenvalues {
        let mut p = vec![1.0, lam];
        for r in 1..r_max {
            p.push(lam * p[r] - qf * p[r - 1]);
        }
        for r in 1..=r_max {
            let y = if r >= 2 { p[r] - qf * p[r - 2] } else { p[r] };
            sums[r] += y;
        }
    }
    let basis = BasisTag::for_q(q);
    (0..=r_max)
        .map(|r| {
            if r == 0 {
                return 0.0;
            }
            let background = n * qf.powf(r as f64 / 2.0) * km_y_moment(basis, r);
            sums[r] - background
        })
        .collect()
}

/// Relative tolerance for the spectral circuit route.
pub const ROUTE_TOL: f64 = 1e-6;

/// Fills `c_r` by inverting the closed-walk relation and cross-checks each
/// value against the spectral route.
pub fn circuit_counts(g: &RegularGraph, r_max: usize) -> Result<NbwCountTable> {
    let mut table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, g.q())?;
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let spectral = circuits_spectral(&ev, g.q(), r_max);
    for r in 1..=r_max {
        let s = spectral[r];
        let exact = c[r] as f64;
        if (s - exact).abs() > ROUTE_TOL * exact.abs().max(1.0) || s.round() as i128 != c[r] {
            return Err(Error::RouteMismatch {
                r,
                combinatorial: c[r],
                spectral: s,
            });
        }
    }
    table.c = c;
    Ok(table)
}

/// Rotation class of a prime circuit, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeCircuitClass {
    pub darts: Vec<usize>,
}

impl PrimeCircuitClass {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// Strictly smaller than every proper rotation: least rotation and aperiodic.
fn is_lyndon(w: &[usize]) -> bool {
    let n = w.len();
    (1..n).all(|s| {
        for i in 0..n {
            let (a, b) = (w[i], w[(i + s) % n]);
            if a != b {
                return a < b;
            }
        }
        false
    })
}

/// Visits every prime class of length `≤ l_max` once, via its Lyndon
/// representative: the walk starts at its smallest dart `s` and only uses
/// darts `≥ s`.
fn for_each_prime<F: FnMut(&[usize])>(
    g: &RegularGraph,
    l_max: usize,
    cap: u64,
    mut visit: F,
) -> Result<()> {
    struct Search<'a, F> {
        g: &'a RegularGraph,
        l_max: usize,
        cap: u64,
        nodes: u64,
        visit: F,
    }

    impl<F: FnMut(&[usize])> Search<'_, F> {
        fn extend(&mut self, s: usize, path: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::BudgetExceeded { cap: self.cap });
            }
            let last = *path.last().expect("path nonempty");
            let v = self.g.dart(last).terminus;
            if v == self.g.dart(s).origin && last != inverse(s) && is_lyndon(path) {
                (self.visit)(path);
            }
            if path.len() == self.l_max {
                return Ok(());
            }
            for &f in self.g.out_darts(v) {
                if f >= s && f != inverse(last) {
                    path.push(f);
                    self.extend(s, path)?;
                    path.pop();
                }
            }
            Ok(())
        }
    }

    if l_max == 0 {
        return Ok(());
    }
    let mut search = Search {
        g,
        l_max,
        cap,
        nodes: 0,
        visit: &mut visit,
    };
    let mut path = Vec::with_capacity(l_max);
    for s in 0..g.darts().len() {
        path.clear();
        path.push(s);
        search.extend(s, &mut path)?;
    }
    Ok(())
}

pub fn prime_circuit_classes(
    g: &RegularGraph,
    l_max: usize,
    cap: u64,
) -> Result<Vec<PrimeCircuitClass>> {
    let mut out = Vec::new();
    for_each_prime(g, l_max, cap, |w| {
        out.push(PrimeCircuitClass { darts: w.to_vec() })
    })?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.darts.cmp(&b.darts)));
    Ok(out)
}

/// Number of prime classes of each length `0..=l_max`, without storing them.
pub fn prime_class_counts(g: &RegularGraph, l_max: usize, cap: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; l_max + 1];
    for_each_prime(g, l_max, cap, |w| counts[w.len()] += 1)?;
    Ok(counts)
}

/// `c_r = Σ_{ℓ | r} ℓ·P_ℓ` from prime class counts.
pub fn circuits_from_primes(prime_counts: &[u64]) -> Vec<i128> {
    let l = prime_counts.len();
    (0..l)
        .map(|r| {
            if r == 0 {
                return 0;
            }
            (1..=r)
                .filter(|d| r % d == 0)
                .map(|d| d as i128 * prime_counts[d] as i128)
                .sum()
        })
        .collect()
}

/// Smallest `r ≥ 1` with `f_r(G) > 0`.
pub fn girth(g: &RegularGraph) -> Result<usize> {
    let n = g.n();
    let q = g.q() as i128;
    let bound = 2 * g.edges().len();
    let mut prev = IntMatrix::identity(n);
    let mut cur = g.int_adjacency();
    for r in 1..=bound {
        if cur.trace() > 0 {
            return Ok(r);
        }
        let mut next = adj_mul(g, &cur)?;
        let coef = if r == 1 { q + 1 } else { q };
        for i in 0..n {
            for j in 0..n {
                next.set(i, j, next.get(i, j) - coef * prev.get(i, j));
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Err(Error::NoConvergence(format!(
        "no closed non-backtracking walk up to length {bound}"
    )))
}

/// `W_n(a,b) = Σ_k (Σ_{m≤k} (C(n,m) − C(n,m−1)) q^m) f_{n−2k}(a,b)`.
pub fn walk_count_from(mats: &[IntMatrix], q: u64, a: usize, b: usize, n: usize) -> BigInt {
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for k in 0..=n / 2 {
        let mut coef = BigInt::zero();
        for m in 0..=k {
            coef += ballot(n as i64, m as i64) * qb.pow(m as u32);
        }
        total += coef * BigInt::from(mats[n - 2 * k].get(a, b));
    }
    total
}

pub fn walk_count(g: &RegularGraph, a: usize, b: usize, n: usize) -> Result<BigInt> {
    for v in [a, b] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { index: v, n: g.n() });
        }
    }
    let mats = nbw_matrices(g, n)?;
    Ok(walk_count_from(&mats, g.q(), a, b, n))
}

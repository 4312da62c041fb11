//! Functional calculus `h(q^{-1/2}A) = ∫h dμ_q·I + Σ_{r≥1} q^{-r/2}a_{r,q}A_r`,
//! the per-vertex pre-trace formula and the trace formula in circuit and
//! prime form.
//!
//! The sums over `r` are cut at the radius from [`truncation_radius`],
//! which bounds the tail with `|a_r| ≤ c·τʳ` and `(A_r)_{uv} ≤ (q+1)q^{r−1}`.
//! Residuals are reported, not asserted.

use num_complex::Complex64;

use crate::cheb::{BasisTag, CoefficientSeries};
use crate::coeff::coefficients;
use crate::eigen::{eigenvalues_symmetric, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::graph::RegularGraph;
use crate::matrix::ComplexMatrix;
use crate::nbw::{
    circuits_from_closed, closed_nbw_counts, nbw_matrices, prime_class_counts, DEFAULT_BUDGET,
};
use crate::numeric::KahanSum;
use crate::spectral::{adjacency_eigen, km_integral, vertex_integral_with};

const MIN_COEFFS: usize = 32;
const MAX_COEFFS: usize = 1024;

/// Smallest `R` with `c(1+1/q)Σ_{r>R}(τ√q)ʳ < tol`, never below the start
/// of the decay model.
pub fn truncation_radius(s: &CoefficientSeries, q: u64, tol: f64) -> Result<usize> {
    let d = s.decay.ok_or(Error::MissingDecay)?;
    if d.is_finite_support() {
        return Ok(d.from.saturating_sub(1));
    }
    let qf = q as f64;
    let ratio = d.tau * qf.sqrt();
    if ratio >= 1.0 {
        return Err(Error::DivergentSeries { ratio });
    }
    let pre = d.c * (1.0 + 1.0 / qf) / (1.0 - ratio);
    let mut r = d.from.saturating_sub(1);
    while pre * ratio.powi(r as i32 + 1) >= tol {
        r += 1;
        if r > 1 << 20 {
            return Err(Error::NoConvergence("truncation radius past 2^20".into()));
        }
    }
    Ok(r)
}

/// Coefficients of `h` in `basis` through the truncation radius for
/// branching `q`, recomputing with more terms until the radius fits.
pub fn coefficients_to_tolerance(
    h: &FunctionSpec,
    basis: BasisTag,
    q: u64,
    tol: f64,
) -> Result<(CoefficientSeries, usize)> {
    h.require_radius(q)?;
    let mut r_max = MIN_COEFFS;
    loop {
        let s = coefficients(h, basis, r_max)?;
        let r = truncation_radius(&s, q, tol)?;
        if r <= r_max || s.is_finite_support() {
            return Ok((s, r));
        }
        if r_max >= MAX_COEFFS {
            return Err(Error::NoConvergence(format!(
                "truncation radius {r} exceeds {MAX_COEFFS} coefficients"
            )));
        }
        r_max = (2 * r_max).max(r).min(MAX_COEFFS);
    }
}

fn quad_tol(tol: f64) -> f64 {
    (tol * 1e-2).clamp(1e-14, 1e-12)
}

fn q_pow(q: u64, r: usize) -> f64 {
    (q as f64).powf(-(r as f64) / 2.0)
}

/// `h(q^{-1/2}A)` through the non-backtracking matrices.
pub fn functional_calculus(g: &RegularGraph, h: &FunctionSpec, tol: f64) -> Result<ComplexMatrix> {
    let q = g.q();
    let basis = BasisTag::for_q(q);
    let (s, r_max) = coefficients_to_tolerance(h, basis, q, tol / 4.0)?;
    let background = km_integral(basis, h, quad_tol(tol))?;
    let mats = nbw_matrices(g, r_max)?;
    let n = g.n();
    let mut acc = vec![KahanSum::new(); n * n];
    for i in 0..n {
        acc[i * n + i].add(background);
    }
    for (r, m) in mats.iter().enumerate().skip(1) {
        let w = s.get(r) * q_pow(q, r);
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (a, &v) in acc.iter_mut().zip(m.as_slice()) {
            if v != 0 {
                a.add(w * v as f64);
            }
        }
    }
    Ok(ComplexMatrix::from_fn(n, |i, j| acc[i * n + j].value()))
}

/// `Q·h(q^{-1/2}Λ)·Qᵀ` from the eigendecomposition.
pub fn functional_calculus_oracle(g: &RegularGraph, h: &FunctionSpec) -> Result<ComplexMatrix> {
    let e = adjacency_eigen(g)?;
    let s = (g.q() as f64).sqrt();
    h.eval_real(0.0)?;
    Ok(e.apply(|l| h.eval_real(l / s).unwrap_or_default()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Largest `r` kept in the sum.
    pub terms: usize,
}

impl TraceReport {
    fn new(lhs: Complex64, rhs: Complex64, terms: usize) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
            terms,
        }
    }
}

/// `∫h dμ_G^v = ∫h dμ_q + Σ_{r≥1} q^{-r/2}a_{r,q}f_r(v)`.
pub fn pretrace(g: &RegularGraph, v: usize, h: &FunctionSpec, tol: f64) -> Result<TraceReport> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { index: v, n: g.n() });
    }
    let q = g.q();
    let basis = BasisTag::for_q(q);
    let e = adjacency_eigen(g)?;
    let lhs = vertex_integral_with(&e, q, v, h)?;
    let (s, r_max) = coefficients_to_tolerance(h, basis, q, tol / 4.0)?;
    let table = closed_nbw_counts(g, r_max)?;
    let mut acc = KahanSum::new();
    acc.add(km_integral(basis, h, quad_tol(tol))?);
    for r in 1..=r_max {
        acc.add(s.get(r) * (q_pow(q, r) * table.f_vertex[r][v] as f64));
    }
    Ok(TraceReport::new(lhs, acc.value(), r_max))
}

fn eigen_side(g: &RegularGraph, h: &FunctionSpec) -> Result<Complex64> {
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let s = (g.q() as f64).sqrt();
    let mut acc = KahanSum::new();
    for l in ev {
        acc.add(h.eval_real(l / s)?);
    }
    Ok(acc.value())
}

/// `Σ_k h(q^{-1/2}λ_k) = |V|∫h dμ_q + Σ_{r≥1} q^{-r/2}a_{r,1}c_r`.
pub fn trace_formula(g: &RegularGraph, h: &FunctionSpec, tol: f64) -> Result<TraceReport> {
    let q = g.q();
    let n = g.n() as f64;
    let lhs = eigen_side(g, h)?;
    // c_r ≤ |V|(q+1)q^{r−1}
    let (s, r_max) = coefficients_to_tolerance(h, BasisTag::Y, q, tol / (4.0 * n))?;
    let table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, q)?;
    let mut acc = KahanSum::new();
    acc.add(km_integral(BasisTag::for_q(q), h, quad_tol(tol / n))? * n);
    for (r, &cr) in c.iter().enumerate().skip(1) {
        acc.add(s.get(r) * (q_pow(q, r) * cr as f64));
    }
    Ok(TraceReport::new(lhs, acc.value(), r_max))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTraceReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Bound on what prime classes longer than the horizon contribute.
    pub tail_bound: f64,
    pub horizon: usize,
    /// `P_ℓ` for `ℓ = 0..=horizon`
    pub prime_counts: Vec<u64>,
}

/// Prime form `|V|∫h dμ_q + Σ_γ Σ_{n≥1} ℓ_γ a_{nℓ_γ,1} q^{-nℓ_γ/2}` with
/// classes enumerated up to length `horizon`.
///
/// A length-`r` circuit missed by the enumeration has every prime
/// divisor length above the horizon, so the loss at order `r > horizon`
/// is at most `c_r ≤ |V|(q+1)q^{r−1}` times `q^{-r/2}|a_{r,1}|`.
pub fn trace_formula_prime(
    g: &RegularGraph,
    h: &FunctionSpec,
    tol: f64,
    horizon: usize,
) -> Result<PrimeTraceReport> {
    let q = g.q();
    let qf = q as f64;
    let n = g.n() as f64;
    let lhs = eigen_side(g, h)?;
    let (s, r_max) = coefficients_to_tolerance(h, BasisTag::Y, q, tol / (4.0 * n))?;
    let horizon = horizon.min(r_max.max(1));
    let primes = prime_class_counts(g, horizon, DEFAULT_BUDGET)?;
    let mut acc = KahanSum::new();
    acc.add(km_integral(BasisTag::for_q(q), h, quad_tol(tol / n))? * n);
    for (l, &p) in primes.iter().enumerate().skip(1) {
        if p == 0 {
            continue;
        }
        let mut inner = KahanSum::new();
        let mut r = l;
        while r <= r_max {
            inner.add(s.get(r) * q_pow(q, r));
            r += l;
        }
        acc.add(inner.value() * (l as f64 * p as f64));
    }
    let tail_bound = (horizon + 1..=r_max)
        .map(|r| n * (qf + 1.0) * qf.powi(r as i32 - 1) * q_pow(q, r) * s.get(r).norm())
        .sum::<f64>()
        + tol / 4.0;
    let rhs = acc.value();
    Ok(PrimeTraceReport {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        tail_bound,
        horizon,
        prime_counts: primes,
    })
}

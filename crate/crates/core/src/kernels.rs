//! Heat and Schrödinger kernels `e^{−tΔ}` and `e^{−itΔ}` of a
//! `(q+1)`-regular graph, `Δ = (q+1)I − A`, expanded along `A_r`:
//!
//! `h_{r,q}(t) = (e^{−(q+1)t}/t) Σ_k q^{−m/2} m I_m(2√q t)`,
//! `w_{r,q}(t) = (e^{−i(q+1)t}/t) Σ_k q^{−m/2} i^{m−1} m J_m(2√q t)`,
//! with `m = r + 2k + 1`. For `q = 1` these are `e^{−2t}I_r(2t)` and
//! `iʳe^{−2it}J_r(2t)`. On the tree, `(e^{−tΔ})_{uv} = h_{d(u,v),q}(t)`.

use num_complex::Complex64;

use crate::bessel::{bessel_sequence, i_pow, BesselKind};
use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::matrix::{ComplexMatrix, Dense};
use crate::nbw::nbw_matrices;
use crate::numeric::{factorial_f64, KahanSum};
use crate::spectral::adjacency_eigen;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Heat,
    Schrodinger,
}

/// Relative size of the last Bessel term kept.
const SERIES_TOL: f64 = 1e-17;

fn check_q(q: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be >= 1".into()));
    }
    Ok(q as f64)
}

fn bessel_budget(r_max: usize, x: f64) -> usize {
    r_max + 2 * (30 + (2.0 * x.abs()).ceil() as usize) + 1
}

/// `Σ_k q^{−m/2} m B_m(x)·phase(m)` for `r = 0..=r_max`, from one Bessel
/// sequence; the shared tail is summed once from the top.
fn coeff_sums(
    kind: BesselKind,
    r_max: usize,
    qf: f64,
    x: f64,
    phase: impl Fn(usize) -> Complex64,
) -> Result<Vec<Complex64>> {
    let m_max = bessel_budget(r_max, x);
    let seq = bessel_sequence(kind, m_max, Complex64::new(x, 0.0))?;
    let term = |m: usize| seq[m] * phase(m) * (m as f64 * qf.powf(-(m as f64) / 2.0));
    let peak = (1..=m_max).map(|m| term(m).norm()).fold(0.0, f64::max);
    if term(m_max).norm() + term(m_max - 1).norm() > SERIES_TOL * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::NoConvergence(format!(
            "kernel series at x = {x} not settled after {m_max} Bessel orders"
        )));
    }
    // tails[m] = Σ_{j≥0} term(m + 2j)
    let mut tails = vec![Complex64::new(0.0, 0.0); m_max + 3];
    for m in (1..=m_max).rev() {
        tails[m] = term(m) + tails[m + 2];
    }
    Ok((0..=r_max).map(|r| tails[r + 1]).collect())
}

/// `h_{0..=r_max, q}(t)`.
pub fn heat_coeffs(r_max: usize, q: u64, t: f64) -> Result<Vec<f64>> {
    let qf = check_q(q)?;
    if t == 0.0 {
        return Ok((0..=r_max)
            .map(|r| if r == 0 { 1.0 } else { 0.0 })
            .collect());
    }
    let x = 2.0 * qf.sqrt() * t;
    let sums = coeff_sums(BesselKind::I, r_max, qf, x, |_| Complex64::new(1.0, 0.0))?;
    let pre = (-(qf + 1.0) * t).exp() / t;
    Ok(sums.into_iter().map(|s| pre * s.re).collect())
}

pub fn heat_coeff(r: usize, q: u64, t: f64) -> Result<f64> {
    Ok(heat_coeffs(r, q, t)?[r])
}

/// `w_{0..=r_max, q}(t)`, the coefficients of `e^{−itΔ}`.
pub fn schrodinger_coeffs(r_max: usize, q: u64, t: f64) -> Result<Vec<Complex64>> {
    let qf = check_q(q)?;
    if t == 0.0 {
        return Ok((0..=r_max)
            .map(|r| Complex64::new(if r == 0 { 1.0 } else { 0.0 }, 0.0))
            .collect());
    }
    let x = 2.0 * qf.sqrt() * t;
    let sums = coeff_sums(BesselKind::J, r_max, qf, x, |m| i_pow(m - 1))?;
    let pre = Complex64::from_polar(1.0 / t, -(qf + 1.0) * t);
    Ok(sums.into_iter().map(|s| pre * s).collect())
}

pub fn schrodinger_coeff(r: usize, q: u64, t: f64) -> Result<Complex64> {
    Ok(schrodinger_coeffs(r, q, t)?[r])
}

/// `q^{−r/2}e^{−(q+1)t}I_r(2√q t) − (q−1)Σ_{k≥1} q^{−(r+2k)/2}e^{−(q+1)t}I_{r+2k}(2√q t)`.
pub fn cjk_alternative_heat_coeff(r: usize, q: u64, t: f64) -> Result<f64> {
    let qf = check_q(q)?;
    if t == 0.0 {
        return Ok(if r == 0 { 1.0 } else { 0.0 });
    }
    let x = 2.0 * qf.sqrt() * t;
    let m_max = bessel_budget(r, x);
    let seq = bessel_sequence(BesselKind::I, m_max, Complex64::new(x, 0.0))?;
    let damp = (-(qf + 1.0) * t).exp();
    let w = |m: usize| qf.powf(-(m as f64) / 2.0) * seq[m].re * damp;
    let mut tail = KahanSum::new();
    let mut m = r + 2;
    while m <= m_max {
        tail.add_real(w(m));
        m += 2;
    }
    Ok(w(r) - (qf - 1.0) * tail.value().re)
}

/// `(r+1)q^{−(r+1)/2}I_{r+1}(2√q t)/(t e^{(q+1)t})` and `(1+c_q)` times it,
/// `c_q = (1−1/q)^{−2} − 1`: the envelope of `h_{r,q}(t)` for `q ≥ 2`,
/// `t > 0`.
pub fn heat_coeff_envelope(r: usize, q: u64, t: f64) -> Result<(f64, f64)> {
    let qf = check_q(q)?;
    if q < 2 || !(t > 0.0) {
        return Err(Error::InvalidParameter(
            "envelope needs q >= 2 and t > 0".into(),
        ));
    }
    let x = 2.0 * qf.sqrt() * t;
    let i = bessel_sequence(BesselKind::I, r + 1, Complex64::new(x, 0.0))?[r + 1].re;
    let low = (r + 1) as f64 * qf.powf(-((r + 1) as f64) / 2.0) * i / (t * ((qf + 1.0) * t).exp());
    let cq = (1.0 - 1.0 / qf).powi(-2) - 1.0;
    Ok((low, (1.0 + cq) * low))
}

/// Index past which `Σ_r |coef_r|·(q+1)q^{r−1}` is below `tol`.
///
/// Both kernels satisfy `|coef_r| ≤ e^{|t|(q+2)}|t|ʳ/r!` (from
/// `|B_m(x)| ≤ (x/2)^m/m!·e^{x²/4(m+1)}` and `x²/4 ≤ (q+1)|t|` once
/// `m + 1 ≥ q|t|`), so the matrix term is at most
/// `(1+1/q)e^{|t|(q+2)}(q|t|)ʳ/r!`.
fn operator_radius(q: u64, t: f64, tol: f64) -> usize {
    let qf = q as f64;
    let a = qf * t.abs();
    let pre = (1.0 + 1.0 / qf) * (t.abs() * (qf + 2.0)).exp();
    let mut r = (a.ceil() as usize).max(1);
    loop {
        let next = pre * a.powi(r as i32 + 1) / factorial_f64(r as u32 + 1);
        // ratio a/(r+2) ≤ 1/2 makes the tail at most twice its first term
        if a / (r + 2) as f64 <= 0.5 && 2.0 * next < tol {
            return r;
        }
        r += 1;
    }
}

fn expand(g: &RegularGraph, coeffs: &[Complex64]) -> Result<ComplexMatrix> {
    let mats = nbw_matrices(g, coeffs.len() - 1)?;
    let n = g.n();
    let mut acc = vec![KahanSum::new(); n * n];
    for (m, &w) in mats.iter().zip(coeffs) {
        for (a, &v) in acc.iter_mut().zip(m.as_slice()) {
            if v != 0 {
                a.add(w * v as f64);
            }
        }
    }
    Ok(ComplexMatrix::from_fn(n, |i, j| acc[i * n + j].value()))
}

/// `e^{−tΔ} = Σ_r h_{r,q}(t) A_r`.
pub fn heat_operator(g: &RegularGraph, t: f64, tol: f64) -> Result<Dense<f64>> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("heat operator needs t >= 0".into()));
    }
    let r_max = operator_radius(g.q(), t, tol);
    let h: Vec<Complex64> = heat_coeffs(r_max, g.q(), t)?
        .into_iter()
        .map(|x| Complex64::new(x, 0.0))
        .collect();
    Ok(expand(g, &h)?.real_part())
}

/// `e^{−itΔ} = Σ_r w_{r,q}(t) A_r`.
pub fn schrodinger_operator(g: &RegularGraph, t: f64, tol: f64) -> Result<ComplexMatrix> {
    let r_max = operator_radius(g.q(), t, tol);
    expand(g, &schrodinger_coeffs(r_max, g.q(), t)?)
}

/// `e^{−tΔ}` from the eigendecomposition of `A`.
pub fn heat_operator_oracle(g: &RegularGraph, t: f64) -> Result<Dense<f64>> {
    let e = adjacency_eigen(g)?;
    let d = (g.q() + 1) as f64;
    Ok(e.apply_real(|l| (-(d - l) * t).exp()))
}

/// `e^{−itΔ}` from the eigendecomposition of `A`.
pub fn schrodinger_operator_oracle(g: &RegularGraph, t: f64) -> Result<ComplexMatrix> {
    let e = adjacency_eigen(g)?;
    let d = (g.q() + 1) as f64;
    Ok(e.apply(|l| Complex64::from_polar(1.0, -(d - l) * t)))
}

/// Kernel entry between two tree vertices at distance `d`.
pub fn tree_kernel_entry(q: u64, d: usize, t: f64, kind: KernelKind) -> Result<Complex64> {
    match kind {
        KernelKind::Heat => Ok(Complex64::new(heat_coeff(d, q, t)?, 0.0)),
        KernelKind::Schrodinger => schrodinger_coeff(d, q, t),
    }
}

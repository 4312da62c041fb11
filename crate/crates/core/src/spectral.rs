//! Normalized spectral measures of finite regular graphs and their
//! transforms.
//!
//! `μ_G = (1/|V|)Σ_k δ_{q^{-1/2}λ_k}` and `μ_G^v = Σ_k Q_{vk}² δ_{q^{-1/2}λ_k}`.

use num_complex::Complex64;

use crate::bessel::{bessel_i_seq, bessel_sequence, i_pow, BesselKind};
use crate::cheb::{km_integrate, km_integrate_real, BasisTag};
use crate::eigen::{eigen_symmetric, eigenvalues_symmetric, Eigen, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::graph::RegularGraph;
use crate::nbw::{circuits_from_closed, closed_nbw_counts};
use crate::numeric::{factorial_f64, KahanSum};

/// Atoms closer than this are merged.
const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    /// `(location, weight)`, ascending in location
    pub atoms: Vec<(f64, f64)>,
}

impl DiscreteMeasure {
    /// Sorts, merges near-coincident atoms and drops zero weights.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        atoms.retain(|&(_, w)| w > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match merged.last_mut() {
                Some((y, v)) if (x - *y).abs() <= MERGE_TOL => {
                    *y = (*y * *v + x * w) / (*v + w);
                    *v += w;
                }
                _ => merged.push((x, w)),
            }
        }
        let total: f64 = merged.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "measure weights sum to {total}, not 1"
            )));
        }
        Ok(Self { atoms: merged })
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let mut s = KahanSum::new();
        for &(x, w) in &self.atoms {
            s.add(f(x) * w);
        }
        s.value()
    }

    pub fn moment(&self, n: u32) -> f64 {
        self.integrate(|x| Complex64::new(x.powi(n as i32), 0.0)).re
    }
}

fn scaled(values: &[f64], q: u64) -> Vec<f64> {
    let s = (q as f64).sqrt();
    values.iter().map(|l| l / s).collect()
}

pub fn adjacency_eigen(g: &RegularGraph) -> Result<Eigen> {
    eigen_symmetric(&g.adjacency(), DEFAULT_TOL)
}

pub fn spectral_measure(g: &RegularGraph) -> Result<DiscreteMeasure> {
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    spectral_measure_from(&ev, g.q())
}

pub fn spectral_measure_from(eigenvalues: &[f64], q: u64) -> Result<DiscreteMeasure> {
    let w = 1.0 / eigenvalues.len() as f64;
    DiscreteMeasure::new(scaled(eigenvalues, q).into_iter().map(|x| (x, w)).collect())
}

pub fn vertex_measure(g: &RegularGraph, v: usize) -> Result<DiscreteMeasure> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { index: v, n: g.n() });
    }
    let e = adjacency_eigen(g)?;
    let xs = scaled(&e.values, g.q());
    DiscreteMeasure::new(
        xs.into_iter()
            .enumerate()
            .map(|(k, x)| (x, e.vectors.get(v, k).powi(2)))
            .collect(),
    )
}

/// `∫h dμ_G^v = ⟨1_v, h(q^{-1/2}A) 1_v⟩`.
pub fn vertex_integral(g: &RegularGraph, v: usize, h: &FunctionSpec) -> Result<Complex64> {
    let e = adjacency_eigen(g)?;
    vertex_integral_with(&e, g.q(), v, h)
}

pub fn vertex_integral_with(e: &Eigen, q: u64, v: usize, h: &FunctionSpec) -> Result<Complex64> {
    let n = e.values.len();
    if v >= n {
        return Err(Error::VertexOutOfRange { index: v, n });
    }
    let s = (q as f64).sqrt();
    let mut acc = KahanSum::new();
    for k in 0..n {
        acc.add(h.eval_real(e.values[k] / s)? * e.vectors.get(v, k).powi(2));
    }
    Ok(acc.value())
}

/// `∫h dμ_q` by quadrature.
pub fn km_integral(basis: BasisTag, h: &FunctionSpec, tol: f64) -> Result<Complex64> {
    // only circle samples fail to evaluate, and they fail everywhere
    h.eval_real(0.0)?;
    km_integrate(basis, |x| h.eval_real(x).unwrap_or_default(), tol)
}

/// Which measure a transform is taken of.
#[derive(Debug, Clone, Copy)]
pub enum Measure<'a> {
    Discrete(&'a DiscreteMeasure),
    KestenMcKay(BasisTag),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StieltjesMode {
    /// `∫ (x − z)^{-1} dμ(x)`
    Plain(Complex64),
    /// `∫ (1 − t²/q')/(1 − xt + t²) dμ(x)`
    Modified { q: BasisTag, t: Complex64 },
}

const POLE_TOL: f64 = 1e-14;

/// The root `t` of `t + 1/t = z` with `|t| < 1`.
pub fn joukowsky_inverse(z: Complex64) -> Result<Complex64> {
    let root = (z * z - 4.0).sqrt();
    let (a, b) = ((z - root) / 2.0, (z + root) / 2.0);
    let t = if a.norm() <= b.norm() { a } else { b };
    if (t.norm() - 1.0).abs() < POLE_TOL {
        return Err(Error::PoleOnSupport);
    }
    Ok(t)
}

pub fn stieltjes(mu: Measure<'_>, mode: StieltjesMode) -> Result<Complex64> {
    match (mu, mode) {
        (Measure::Discrete(m), StieltjesMode::Plain(z)) => {
            let mut s = KahanSum::new();
            for &(x, w) in &m.atoms {
                let d = x - z;
                if d.norm() < POLE_TOL {
                    return Err(Error::PoleOnSupport);
                }
                s.add(w / d);
            }
            Ok(s.value())
        }
        (Measure::Discrete(m), StieltjesMode::Modified { q, t }) => {
            let num = 1.0 - t * t * q.qinv();
            let mut s = KahanSum::new();
            for &(x, w) in &m.atoms {
                let d = 1.0 - t * x + t * t;
                if d.norm() < POLE_TOL {
                    return Err(Error::PoleOnSupport);
                }
                s.add(num / d * w);
            }
            Ok(s.value())
        }
        (Measure::KestenMcKay(b), StieltjesMode::Plain(z)) => {
            // S_{μ_q}(z) = t/(t²/q − 1), z = t + 1/t
            let t = joukowsky_inverse(z)?;
            Ok(t / (t * t * b.qinv() - 1.0))
        }
        (Measure::KestenMcKay(b), StieltjesMode::Modified { q, t }) => {
            if t.norm() >= 1.0 {
                return Err(Error::PoleOnSupport);
            }
            if q == b {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let num = 1.0 - t * t * q.qinv();
            km_integrate(b, |x| num / (1.0 - t * x + t * t), 1e-13)
        }
    }
}

/// Taylor coefficients of `(1 − t²/q)/(1 − xt + t²)` by long division.
fn division_coeffs(x: f64, qinv: f64, r_max: usize) -> Vec<f64> {
    let mut c = vec![0.0; r_max + 1];
    for r in 0..=r_max {
        let num = match r {
            0 => 1.0,
            2 => -qinv,
            _ => 0.0,
        };
        let a = if r >= 1 { x * c[r - 1] } else { 0.0 };
        let b = if r >= 2 { c[r - 2] } else { 0.0 };
        c[r] = num + a - b;
    }
    c
}

#[derive(Debug, Clone)]
pub struct StieltjesSeriesReport {
    /// Taylor coefficients of `S̃_{μ_G,q}`
    pub modified_q: Vec<f64>,
    /// `q^{-r/2} f_r / |V|`
    pub expected_q: Vec<f64>,
    /// Taylor coefficients of `S̃_{μ_G,1} − (1 − t²)/(1 − t²/q)`
    pub modified_1: Vec<f64>,
    /// `q^{-r/2} c_r / |V|`
    pub expected_1: Vec<f64>,
    pub max_deviation: f64,
}

/// Compares the Taylor coefficients of both modified Stieltjes transforms
/// of `μ_G` with the normalized closed-walk and circuit counts.
pub fn stieltjes_series_check(g: &RegularGraph, r_max: usize) -> Result<StieltjesSeriesReport> {
    let mu = spectral_measure(g)?;
    let table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, g.q())?;
    let qf = g.q() as f64;
    let n = g.n() as f64;
    let basis = BasisTag::for_q(g.q());

    let mut modified_q = vec![0.0; r_max + 1];
    let mut modified_1 = vec![0.0; r_max + 1];
    for &(x, w) in &mu.atoms {
        let dq = division_coeffs(x, basis.qinv(), r_max);
        let d1 = division_coeffs(x, 1.0, r_max);
        for r in 0..=r_max {
            modified_q[r] += w * dq[r];
            modified_1[r] += w * d1[r];
        }
    }
    // (1 − t²)/(1 − t²/q) = 1 + Σ_{k≥1} (q^{-k} − q^{-k+1}) t^{2k}
    for (r, m) in modified_1.iter_mut().enumerate() {
        let bg = if r == 0 {
            1.0
        } else if r % 2 == 0 {
            let k = (r / 2) as i32;
            qf.powi(-k) - qf.powi(1 - k)
        } else {
            0.0
        };
        *m -= bg;
    }
    let expected_q: Vec<f64> = (0..=r_max)
        .map(|r| qf.powf(-(r as f64) / 2.0) * table.f[r] as f64 / n)
        .collect();
    let expected_1: Vec<f64> = (0..=r_max)
        .map(|r| qf.powf(-(r as f64) / 2.0) * c[r] as f64 / n)
        .collect();
    let max_deviation = modified_q
        .iter()
        .zip(&expected_q)
        .chain(modified_1.iter().zip(&expected_1))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(StieltjesSeriesReport {
        modified_q,
        expected_q,
        modified_1,
        expected_1,
        max_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierRoute {
    Eigen,
    BesselSeries,
}

/// Fourier–Laplace transform `μ̂_G(p) = ∫e^{ipx} dμ_G`.
pub fn fourier_laplace(
    g: &RegularGraph,
    p: Complex64,
    route: FourierRoute,
    tol: f64,
) -> Result<Complex64> {
    match route {
        FourierRoute::Eigen => {
            let mu = spectral_measure(g)?;
            Ok(mu.integrate(|x| (Complex64::i() * p * x).exp()))
        }
        FourierRoute::BesselSeries => Ok(fourier_laplace_series(g, p, tol)?.value),
    }
}

#[derive(Debug, Clone)]
pub struct FourierSeries {
    pub value: Complex64,
    /// `μ̂_q(p)`
    pub background: Complex64,
    /// `q^{-r/2} iʳ J_r(2p) c_r/|V|` for `r = 0..=R`
    pub terms: Vec<Complex64>,
    pub tail_bound: f64,
}

impl FourierSeries {
    /// First `r` whose correction term carries a nonzero circuit count.
    pub fn leading_order(&self, c: &[i128]) -> Option<usize> {
        (1..c.len().min(self.terms.len())).find(|&r| c[r] != 0)
    }
}

/// Series route `μ̂_q(p) + Σ_r q^{-r/2} iʳ J_r(2p) c_r/|V|`, truncated once
/// `(q+1)/q · Σ_{r>R} q^{r/2} |p|ʳ/r! · I_0(4|p|)` is below `tol`.
pub fn fourier_laplace_series(g: &RegularGraph, p: Complex64, tol: f64) -> Result<FourierSeries> {
    let qf = g.q() as f64;
    let n = g.n() as f64;
    let a = p.norm();
    let i0 = bessel_i_seq(0, 4.0 * a)[0];
    let bound =
        |r: usize| (qf + 1.0) / qf * (qf.sqrt() * a).powi(r as i32) / factorial_f64(r as u32) * i0;
    let mut r_max = 1;
    // tail of a super-geometric series: twice the first omitted term is safe
    // once the term ratio drops below 1/2
    while r_max < 400 {
        let next = bound(r_max + 1);
        let ratio = qf.sqrt() * a / (r_max + 2) as f64;
        if ratio < 0.5 && 2.0 * next < tol {
            break;
        }
        r_max += 1;
    }
    let tail_bound = 2.0 * bound(r_max + 1);
    let table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, g.q())?;
    let j = bessel_sequence(BesselKind::J, r_max, p * 2.0)?;
    let basis = BasisTag::for_q(g.q());
    let background = km_integrate(basis, |x| (Complex64::i() * p * x).exp(), tol.min(1e-12))?;
    let mut terms = vec![Complex64::new(0.0, 0.0); r_max + 1];
    let mut acc = KahanSum::new();
    acc.add(background);
    for r in 1..=r_max {
        terms[r] = i_pow(r) * j[r] * (qf.powf(-(r as f64) / 2.0) * c[r] as f64 / n);
        acc.add(terms[r]);
    }
    Ok(FourierSeries {
        value: acc.value(),
        background,
        terms,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatRoute {
    /// `Σ_k e^{−λ_k(Δ)t}`
    Eigen,
    /// `e^{−(q+1)t}(|V|∫e^{√q t x}dμ_q + Σ_r q^{-r/2} c_r I_r(2√q t))`
    Series,
    /// `∫e^{−t(√q−1)²x}dμ_q + Σ_r q^{-r/2}(c_r/|V|)e^{−(q+1)t}I_r(2√q t)`,
    /// the older closed form kept for comparison; it does not match the
    /// eigenvalue sum.
    Displayed,
}

/// Heat trace `Σ_k e^{−λ_k(Δ) t}`, `Δ = (q+1)I − A`.
pub fn heat_trace(g: &RegularGraph, t: f64, route: HeatRoute, tol: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("heat trace needs t >= 0".into()));
    }
    let qf = g.q() as f64;
    let n = g.n() as f64;
    let basis = BasisTag::for_q(g.q());
    match route {
        HeatRoute::Eigen => {
            let ev = eigenvalues_symmetric(&g.laplacian(), DEFAULT_TOL)?;
            Ok(ev.iter().map(|l| (-l * t).exp()).sum())
        }
        HeatRoute::Series | HeatRoute::Displayed => {
            let s = qf.sqrt();
            let arg = 2.0 * s * t;
            // q^{-r/2}c_r ≤ (q+1)/q · q^{r/2}; stop when the Bessel tail is negligible
            let mut r_max = 1;
            while r_max < 400 {
                let term = (qf + 1.0) / qf * (s * arg / 2.0).powi(r_max as i32 + 1)
                    / factorial_f64(r_max as u32 + 1)
                    * bessel_i_seq(0, arg)[0];
                if term * n < tol * 1e-2 && s * arg / 2.0 < (r_max + 2) as f64 / 2.0 {
                    break;
                }
                r_max += 1;
            }
            let table = closed_nbw_counts(g, r_max)?;
            let c = circuits_from_closed(&table.f, g.q())?;
            let ib = bessel_i_seq(r_max, arg);
            let damp = (-(qf + 1.0) * t).exp();
            let mut acc = KahanSum::new();
            for r in 1..=r_max {
                acc.add_real(qf.powf(-(r as f64) / 2.0) * c[r] as f64 * ib[r]);
            }
            let sum = acc.value().re;
            if route == HeatRoute::Series {
                let bg = km_integrate_real(basis, |x| (s * t * x).exp(), tol.min(1e-12))?;
                Ok(damp * (n * bg + sum))
            } else {
                let bg = km_integrate_real(
                    basis,
                    |x| (-t * (s - 1.0).powi(2) * x).exp(),
                    tol.min(1e-12),
                )?;
                Ok(bg + damp * sum / n)
            }
        }
    }
}

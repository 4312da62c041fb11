//! Ihara zeta function of a `(q+1)`-regular graph.
//!
//! Determinant side `1/ζ(t) = (1−t²)^{(q−1)|V|/2} det(I − tA + qt²I)`,
//! Euler product `1/ζ(t) = Π_γ (1 − t^{ℓ_γ})` over oriented prime classes,
//! and `log ζ(t) = Σ_{r≥1} c_r tʳ/r`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eigen::{eigenvalues_symmetric, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::nbw::{circuits_from_closed, closed_nbw_counts, prime_class_counts};
use crate::numeric::KahanSum;
use crate::series::{binomial_power, characteristic_polynomial, PowerSeries};

/// `(q−1)|V|/2` as a real number.
fn exponent(g: &RegularGraph) -> f64 {
    (g.q() as f64 - 1.0) * g.n() as f64 / 2.0
}

/// `1/ζ(t)` from the eigenvalues of `A`.
pub fn zeta_reciprocal(g: &RegularGraph, t: Complex64) -> Result<Complex64> {
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    zeta_reciprocal_from(&ev, g.q(), t)
}

pub fn zeta_reciprocal_from(eigenvalues: &[f64], q: u64, t: Complex64) -> Result<Complex64> {
    let qf = q as f64;
    let det = eigenvalues
        .iter()
        .fold(Complex64::one(), |acc, &l| acc * (1.0 - t * l + t * t * qf));
    let e = (qf - 1.0) * eigenvalues.len() as f64 / 2.0;
    let base = 1.0 - t * t;
    let pre = if e.fract() == 0.0 {
        base.powi(e as i32)
    } else {
        base.powf(e)
    };
    Ok(pre * det)
}

/// Exact power series of `1/ζ` through `t^order`, from the characteristic
/// polynomial: `det(I − tA + qt²I) = Σ_k p_k (1+qt²)ᵏ t^{n−k}`.
pub fn determinant_series(g: &RegularGraph, order: usize) -> Result<PowerSeries> {
    let e = exponent(g);
    if e.fract() != 0.0 {
        return Err(Error::InvalidParameter("(q−1)|V| is odd".into()));
    }
    let n = g.n();
    let p = characteristic_polynomial(&g.int_adjacency());
    let qr = BigRational::from_integer(BigInt::from(g.q()));
    let mut det = PowerSeries::new(Vec::new(), order);
    for (k, pk) in p.iter().enumerate() {
        if pk.is_zero() || n - k > order {
            continue;
        }
        let pw = binomial_power(&qr, 2, k as i64, order);
        let shift = n - k;
        for (j, c) in pw.coeffs.iter().enumerate() {
            if j + shift > order {
                break;
            }
            det.coeffs[j + shift] += c * BigRational::from_integer(pk.clone());
        }
    }
    let pre = binomial_power(&-BigRational::one(), 2, e as i64, order);
    Ok(&pre * &det)
}

/// Exact power series of `1/ζ` through `t^order` from the prime classes.
pub fn euler_product_series(g: &RegularGraph, order: usize, cap: u64) -> Result<PowerSeries> {
    let primes = prime_class_counts(g, order, cap)?;
    let mut out = PowerSeries::one(order);
    for (l, &p) in primes.iter().enumerate().skip(1) {
        if p > 0 {
            out = &out * &binomial_power(&-BigRational::one(), l, p as i64, order);
        }
    }
    Ok(out)
}

/// Coefficients `c_r/r` of `log ζ`, index `0` holding `0`.
pub fn zeta_log_series(g: &RegularGraph, order: usize) -> Result<PowerSeries> {
    let table = closed_nbw_counts(g, order)?;
    let c = circuits_from_closed(&table.f, g.q())?;
    let coeffs = c
        .iter()
        .enumerate()
        .map(|(r, &cr)| {
            if r == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(cr), BigInt::from(r))
            }
        })
        .collect();
    Ok(PowerSeries::new(coeffs, order))
}

/// `−log` of [`determinant_series`], which must equal [`zeta_log_series`].
pub fn log_zeta_from_determinant(g: &RegularGraph, order: usize) -> Result<PowerSeries> {
    Ok(determinant_series(g, order)?.log()?.neg())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanujanVerdict {
    pub is_ramanujan: bool,
    /// Nontrivial eigenvalue of largest modulus, if any.
    pub witness: Option<f64>,
    /// `2√q`
    pub bound: f64,
}

const TRIVIAL_TOL: f64 = 1e-9;

/// Every eigenvalue except one `q+1` (and one `−(q+1)` for bipartite
/// graphs) must lie in `[−2√q, 2√q]`.
pub fn ramanujan_check(g: &RegularGraph) -> Result<RamanujanVerdict> {
    let mut ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let d = (g.q() + 1) as f64;
    let mut drop = |target: f64| {
        if let Some(i) = ev.iter().position(|&l| (l - target).abs() < TRIVIAL_TOL) {
            ev.remove(i);
        }
    };
    drop(d);
    if g.is_bipartite() {
        drop(-d);
    }
    let bound = 2.0 * (g.q() as f64).sqrt();
    let witness = ev
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(RamanujanVerdict {
        is_ramanujan: witness.is_none_or(|w| w.abs() <= bound + TRIVIAL_TOL),
        witness,
        bound,
    })
}

/// Three evaluations of `∫(1−t²)/(1−xt+t²) dμ_G` for `|t| < q^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesZetaCheck {
    /// From the eigenvalues directly.
    pub stieltjes: f64,
    /// `(1−t²)/(1−t²/q) + (s/|V|)·(d/ds) log ζ(s)` at `s = t/√q`.
    pub via_zeta: f64,
    /// `(1−t²)/(1−t²/q) + Σ_r q^{-r/2}c_r tʳ/|V|`.
    pub via_circuits: f64,
}

pub fn stieltjes_zeta_check(g: &RegularGraph, t: f64, r_max: usize) -> Result<StieltjesZetaCheck> {
    let qf = g.q() as f64;
    let n = g.n() as f64;
    let sq = qf.sqrt();
    if !(t.abs() * sq < 1.0) {
        return Err(Error::DivergentSeries {
            ratio: t.abs() * sq,
        });
    }
    let ev = eigenvalues_symmetric(&g.adjacency(), DEFAULT_TOL)?;
    let mut acc = KahanSum::new();
    for &l in &ev {
        acc.add_real((1.0 - t * t) / (1.0 - l / sq * t + t * t));
    }
    let stieltjes = acc.value().re / n;
    let background = (1.0 - t * t) / (1.0 - t * t / qf);

    let s = t / sq;
    let e = exponent(g);
    let mut d = KahanSum::new();
    d.add_real(2.0 * e * s / (1.0 - s * s));
    for &l in &ev {
        d.add_real((l - 2.0 * qf * s) / (1.0 - l * s + qf * s * s));
    }
    let via_zeta = background + s * d.value().re / n;

    let table = closed_nbw_counts(g, r_max)?;
    let c = circuits_from_closed(&table.f, g.q())?;
    let mut sum = KahanSum::new();
    for (r, &cr) in c.iter().enumerate().skip(1) {
        sum.add_real(cr as f64 * s.powi(r as i32));
    }
    let via_circuits = background + sum.value().re / n;
    Ok(StieltjesZetaCheck {
        stieltjes,
        via_zeta,
        via_circuits,
    })
}

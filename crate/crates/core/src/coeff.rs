//! Expansion coefficients `a_{r,q}(h)` of `h = Σ a_{r,q} X_{r,q}`.
//!
//! The general route is the contour integral
//! `a_{r,q} = (1/2πi)∮ h(ξ + 1/ξ) ξ^{r−1} g_q(ξ) dξ` over the unit circle, with
//! `g_q(ξ) = (1 − ξ²)/(1 − ξ²/q)`, sampled at `N` roots of unity. For `q = 1`
//! this is the cosine transform `(1/π)∫₀^π h(2cos θ)cos(rθ) dθ`. Closed forms
//! cover powers, exponentials and the logarithm kernel.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bessel::{bessel_sequence, BesselKind};
use crate::cheb::{basis_convert, fit_decay, BasisTag, CoefficientSeries, Decay, ExactSeries};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::numeric::{ballot, binom};

const CONTOUR_MIN_NODES: usize = 64;
const CONTOUR_MAX_NODES: usize = 1 << 16;
const CONTOUR_TOL: f64 = 1e-12;

fn weight(basis: BasisTag, xi: Complex64) -> Complex64 {
    let xi2 = xi * xi;
    match basis {
        BasisTag::Y => Complex64::one(),
        BasisTag::Xinf => 1.0 - xi2,
        BasisTag::Xq(q) => (1.0 - xi2) / (1.0 - xi2 / q as f64),
    }
}

/// One pass of the discrete contour sum with `n` nodes on `|ξ| = tau`.
fn contour_pass(basis: BasisTag, samples: &[Complex64], tau: f64, r_max: usize) -> Vec<Complex64> {
    let n = samples.len();
    let roots: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    let weighted: Vec<Complex64> = (0..n)
        .map(|j| samples[j] * weight(basis, roots[j] * tau))
        .collect();
    (0..=r_max)
        .map(|r| {
            let s: Complex64 = (0..n).map(|j| weighted[j] * roots[(j * r) % n]).sum();
            s / n as f64 * tau.powi(r as i32)
        })
        .collect()
}

fn contour_samples(h: &FunctionSpec, n: usize) -> Result<Vec<Complex64>> {
    (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            h.eval_real(2.0 * theta.cos())
        })
        .collect()
}

/// `a_{0..=r_max, q}(h)` by the contour integral, doubling the node count
/// until the coefficients stop moving.
pub fn coeffs_a(h: &FunctionSpec, basis: BasisTag, r_max: usize) -> Result<CoefficientSeries> {
    let basis = match basis {
        BasisTag::Xq(1) => BasisTag::Y,
        b => b,
    };
    if let FunctionSpec::CircleSamples { values, tau, .. } = h {
        if values.len() < 2 * (r_max + 1) {
            return Err(Error::InvalidParameter(format!(
                "{} circle samples cannot resolve {} coefficients",
                values.len(),
                r_max + 1
            )));
        }
        let coeffs = contour_pass(basis, values, *tau, r_max);
        return CoefficientSeries::with_fitted_decay(basis, coeffs);
    }

    let mut n = CONTOUR_MIN_NODES.max((2 * (r_max + 1)).next_power_of_two());
    let mut prev = contour_pass(basis, &contour_samples(h, n)?, 1.0, r_max);
    loop {
        n *= 2;
        if n > CONTOUR_MAX_NODES {
            return Err(Error::NoConvergence(format!(
                "contour coefficients unsettled at {CONTOUR_MAX_NODES} nodes"
            )));
        }
        let cur = contour_pass(basis, &contour_samples(h, n)?, 1.0, r_max);
        let scale = cur.iter().map(|a| a.norm()).fold(1.0, f64::max);
        let change = cur
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prev = cur;
        if change < CONTOUR_TOL * scale {
            break;
        }
    }
    finish(basis, prev, h.polynomial_degree())
}

/// Attaches the tail model: exact zeros past the degree of a polynomial,
/// a fitted geometric bound otherwise.
fn finish(
    basis: BasisTag,
    mut coeffs: Vec<Complex64>,
    degree: Option<usize>,
) -> Result<CoefficientSeries> {
    match degree {
        Some(d) => {
            for a in coeffs.iter_mut().skip(d + 1) {
                *a = Complex64::zero();
            }
            coeffs.truncate(d + 1);
            let len = coeffs.len();
            CoefficientSeries::new(basis, coeffs, Some(Decay::finite(len)))
        }
        None => {
            let decay = fit_decay(&coeffs);
            CoefficientSeries::new(basis, coeffs, decay)
        }
    }
}

/// Relative size below which a Taylor term is dropped.
const TAYLOR_TOL: f64 = 1e-15;

/// `a_{r,1} = Σ_k C(2k+r, k)·b_{2k+r}` from Taylor coefficients.
///
/// `b` must come from a series with radius `> 2`; terms are summed until
/// the radius bound `C(2k+r,k)(2/R')^{2k+r}` with `2 < R' < R` drops below
/// `1e-15` relative.
pub fn taylor_to_cheb(b: &[Complex64], radius: f64, r_max: usize) -> Result<CoefficientSeries> {
    if !(radius > 2.0) {
        return Err(Error::RadiusTooSmall(radius));
    }
    let finite = radius.is_infinite();
    let coeffs: Vec<Complex64> = (0..=r_max)
        .map(|r| {
            let mut sum = Complex64::zero();
            let mut k = 0;
            while 2 * k + r < b.len() {
                let c = binom_f64(2 * k + r, k);
                let term = b[2 * k + r] * c;
                sum += term;
                if !finite && k > 4 && term.norm() <= TAYLOR_TOL * sum.norm() {
                    break;
                }
                k += 1;
            }
            sum
        })
        .collect();
    let degree = if finite {
        Some(b.iter().rposition(|x| !x.is_zero()).unwrap_or(0))
    } else {
        None
    };
    finish(BasisTag::Y, coeffs, degree)
}

fn binom_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Taylor route for any spec with a Taylor series, choosing the number of
/// Taylor terms from the radius.
pub fn taylor_route(h: &FunctionSpec, r_max: usize) -> Result<CoefficientSeries> {
    let radius = h.taylor_radius();
    if !(radius > 2.0) {
        return Err(Error::RadiusTooSmall(radius));
    }
    let n_terms = match h.polynomial_degree() {
        Some(d) => d + 1,
        None if radius.is_infinite() => r_max + 200,
        // (2/R)^n < 1e−17 with room for the binomial growth 2^n
        None => {
            let ratio = 4.0 / radius;
            let extra = if ratio < 1.0 {
                (40.0 / -ratio.log10()).ceil() as usize
            } else {
                2000
            };
            r_max + extra.min(4000)
        }
    };
    let b = h.taylor_coeffs(n_terms)?;
    taylor_to_cheb(&b, radius, r_max)
}

/// Exact coefficients of `xⁿ`:
/// `Y`: `C(n,k)` at index `n−2k`; `Xinf`: `C(n,k) − C(n,k−1)`;
/// `Xq`: `Σ_{m≤k} q^{−(k−m)}(C(n,m) − C(n,m−1))`.
pub fn power_coeffs(n: usize, basis: BasisTag) -> ExactSeries {
    let basis = match basis {
        BasisTag::Xq(1) => BasisTag::Y,
        b => b,
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    let ni = n as i64;
    for k in 0..=n / 2 {
        let ki = k as i64;
        let c = match basis {
            BasisTag::Y => BigRational::from_integer(binom(ni, ki)),
            BasisTag::Xinf => BigRational::from_integer(ballot(ni, ki)),
            BasisTag::Xq(_) => {
                let qinv = basis.qinv_exact();
                let mut acc = BigRational::zero();
                for m in 0..=ki {
                    let w = (0..(ki - m)).fold(BigRational::one(), |a, _| a * &qinv);
                    acc += w * BigRational::from_integer(ballot(ni, m));
                }
                acc
            }
        };
        coeffs[n - 2 * k] = c;
    }
    ExactSeries { basis, coeffs }
}

fn exp_closed(z: Complex64, basis: BasisTag, r_max: usize) -> Result<Vec<Complex64>> {
    let extra = 40 + (4.0 * z.norm()).ceil() as usize;
    let seq = bessel_sequence(BesselKind::I, r_max + extra, z * 2.0)?;
    match basis {
        BasisTag::Y | BasisTag::Xq(1) => Ok(seq[..=r_max].to_vec()),
        _ if z.norm() == 0.0 => Err(Error::ZeroArgument),
        BasisTag::Xinf => Ok((0..=r_max)
            .map(|r| seq[r + 1] * (r + 1) as f64 / z)
            .collect()),
        BasisTag::Xq(q) => {
            let qinv = 1.0 / q as f64;
            Ok((0..=r_max)
                .map(|r| {
                    let mut sum = Complex64::zero();
                    let mut w = 1.0;
                    let mut k = 0;
                    while r + 2 * k + 1 < seq.len() {
                        let m = r + 2 * k + 1;
                        sum += seq[m] * (m as f64 * w);
                        w *= qinv;
                        k += 1;
                    }
                    sum / z
                })
                .collect())
        }
    }
}

/// Closed-form coefficients of `e^{zx}` through Bessel functions:
/// `a_{r,1} = I_r(2z)`, `a_{r,∞} = (r+1)I_{r+1}(2z)/z`,
/// `a_{r,q} = (1/z)Σ_k q^{−k}(r+2k+1)I_{r+2k+1}(2z)`.
/// At `z = 0` the `1/z` forms fall back to the `Y` expansion and convert.
pub fn exp_coeffs(z: Complex64, basis: BasisTag, r_max: usize) -> Result<CoefficientSeries> {
    match exp_closed(z, basis, r_max) {
        Ok(c) => {
            let degree = (z.norm() == 0.0).then_some(0);
            finish(basis, c, degree)
        }
        Err(Error::ZeroArgument) => {
            let y = CoefficientSeries::polynomial(BasisTag::Y, vec![Complex64::one()])?;
            basis_convert(&y, basis)
        }
        Err(e) => Err(e),
    }
}

/// `e^{ipx}`, i.e. [`exp_coeffs`] at `z = ip`; the Bessel functions become
/// `I_r(2ip) = iʳJ_r(2p)`.
pub fn oscillatory_exp_coeffs(
    p: Complex64,
    basis: BasisTag,
    r_max: usize,
) -> Result<CoefficientSeries> {
    exp_coeffs(Complex64::new(-p.im, p.re), basis, r_max)
}

/// `Y`-coefficients of `x ↦ log(1 − xt + t²)`: `a_0 = 0`, `a_r = −tʳ/r`.
pub fn log_kernel_coeffs(t: f64, r_max: usize) -> Result<CoefficientSeries> {
    let coeffs: Vec<Complex64> = (0..=r_max)
        .map(|r| {
            if r == 0 {
                Complex64::zero()
            } else {
                Complex64::new(-t.powi(r as i32) / r as f64, 0.0)
            }
        })
        .collect();
    let decay = if t == 0.0 {
        Decay::finite(1)
    } else {
        Decay {
            c: 1.0,
            tau: t.abs(),
            from: 0,
        }
    };
    CoefficientSeries::new(BasisTag::Y, coeffs, Some(decay))
}

/// Closed form when one exists, contour integral otherwise.
pub fn coefficients(h: &FunctionSpec, basis: BasisTag, r_max: usize) -> Result<CoefficientSeries> {
    use crate::function::Builtin;
    match h {
        FunctionSpec::Builtin(Builtin::Exp(_))
        | FunctionSpec::Builtin(Builtin::OscillatoryExp(_)) => {
            exp_coeffs(h.exp_rate().expect("exponential"), basis, r_max)
        }
        FunctionSpec::Builtin(Builtin::Monomial(n)) => {
            let exact = power_coeffs(*n as usize, basis).to_series();
            Ok(exact)
        }
        FunctionSpec::Builtin(Builtin::ShiftedLog(t)) if basis == BasisTag::Y => {
            log_kernel_coeffs(*t, r_max)
        }
        _ => coeffs_a(h, basis, r_max),
    }
}

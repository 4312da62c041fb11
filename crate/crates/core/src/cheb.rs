//! Chebyshev-type polynomials `X_r`, `Y_r`, `X_{r,q}` and the Kesten–McKay
//! measures they are orthogonal against.
//!
//! All three families come from one generating function,
//! `(1 − t²/q)/(1 − xt + t²) = Σ X_{r,q}(x) tʳ`, with `Y = X_{·,1}` and
//! `X = X_{·,∞}`. In particular `Y_0 = 1` (not 2): the z-form
//! `Y_r(z + 1/z) = zʳ + z⁻ʳ` only holds for `r ≥ 1`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::numeric::rational_to_f64;

/// Which member of the `X_{·,q}` family a coefficient sequence expands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// `q = 1`
    Y,
    /// `q = ∞`
    Xinf,
    /// `q ≥ 2`
    Xq(u64),
}

impl BasisTag {
    /// Normalizing constructor: `Xq(1)` is `Y`.
    pub fn for_q(q: u64) -> Self {
        if q == 1 {
            BasisTag::Y
        } else {
            BasisTag::Xq(q)
        }
    }

    /// `1/q` with `1/∞ = 0`.
    pub fn qinv(self) -> f64 {
        match self {
            BasisTag::Y => 1.0,
            BasisTag::Xinf => 0.0,
            BasisTag::Xq(q) => 1.0 / q as f64,
        }
    }

    pub fn qinv_exact(self) -> BigRational {
        match self {
            BasisTag::Y => BigRational::one(),
            BasisTag::Xinf => BigRational::zero(),
            BasisTag::Xq(q) => BigRational::new(BigInt::one(), BigInt::from(q)),
        }
    }

    /// Finite branching number, `None` for `∞`.
    pub fn q(self) -> Option<u64> {
        match self {
            BasisTag::Y => Some(1),
            BasisTag::Xinf => None,
            BasisTag::Xq(q) => Some(q),
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            BasisTag::Xq(0) => Err(Error::InvalidParameter("q must be >= 1".into())),
            BasisTag::Xq(1) => Ok(BasisTag::Y),
            b => Ok(b),
        }
    }
}

/// Evaluates `X_{0..=r_max, q}(x)` by the three-term recurrence.
pub fn cheb_eval_all<T>(basis: BasisTag, r_max: usize, x: T) -> Vec<T>
where
    T: Copy + Num + From<f64>,
{
    let qinv = T::from(basis.qinv());
    let mut x_plain = Vec::with_capacity(r_max + 1);
    x_plain.push(T::one());
    if r_max >= 1 {
        x_plain.push(x);
    }
    for r in 1..r_max {
        let next = x * x_plain[r] - x_plain[r - 1];
        x_plain.push(next);
    }
    (0..=r_max)
        .map(|r| {
            if r >= 2 {
                x_plain[r] - qinv * x_plain[r - 2]
            } else {
                x_plain[r]
            }
        })
        .collect()
}

pub fn cheb_eval<T>(basis: BasisTag, r: usize, x: T) -> T
where
    T: Copy + Num + From<f64>,
{
    cheb_eval_all(basis, r, x)[r]
}

/// Monomial coefficients (ascending powers) of `X_{r,q}`, exact.
pub fn cheb_coefficients(basis: BasisTag, r: usize) -> Vec<BigRational> {
    // plain X_r in integers first
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    let mut plain = vec![prev.clone(), cur.clone()];
    for _ in 1..r {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
        plain.push(cur.clone());
    }
    let to_rat = |v: &Vec<BigInt>| -> Vec<BigRational> {
        v.iter().cloned().map(BigRational::from_integer).collect()
    };
    let mut out = to_rat(&plain[r]);
    if r >= 2 {
        let qinv = basis.qinv_exact();
        for (i, c) in plain[r - 2].iter().enumerate() {
            out[i] -= &qinv * BigRational::from_integer(c.clone());
        }
    }
    out
}

/// Kesten–McKay density; `basis` names the branching number.
pub fn km_density(basis: BasisTag, x: f64) -> Result<f64> {
    let basis = basis.validate()?;
    if x.abs() > 2.0 {
        return Ok(0.0);
    }
    let s = (4.0 - x * x).max(0.0).sqrt();
    let pi = std::f64::consts::PI;
    Ok(match basis {
        BasisTag::Y => {
            if x.abs() == 2.0 {
                return Err(Error::SingularEndpoint(x));
            }
            1.0 / (pi * s)
        }
        BasisTag::Xinf => s / (2.0 * pi),
        BasisTag::Xq(q) => {
            let q = q as f64;
            let a = q.sqrt() + 1.0 / q.sqrt();
            (q + 1.0) * s / (2.0 * pi * (a * a - x * x))
        }
    })
}

/// Weight of the `θ` trapezoid rule after substituting `x = 2cos θ`, so that
/// `∫ f dμ_q = (1/2π)∫₀^{2π} f(2cos θ)·π·w(θ) dθ`.
fn theta_weight(basis: BasisTag, theta: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let s2 = theta.sin().powi(2);
    match basis {
        BasisTag::Y => 1.0 / pi,
        BasisTag::Xinf => 2.0 * s2 / pi,
        BasisTag::Xq(q) => {
            let q = q as f64;
            let c2 = theta.cos().powi(2);
            (q + 1.0) * 2.0 * s2 / (pi * (q + 1.0 / q + 2.0 - 4.0 * c2))
        }
    }
}

const KM_MIN_NODES: usize = 64;
const KM_MAX_NODES: usize = 1 << 20;

/// `∫ f dμ_q` by the trapezoid rule in `θ`, doubling the node count until
/// two successive values agree to `tol·max(1, |I|)`.
pub fn km_integrate<F>(basis: BasisTag, f: F, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let basis = basis.validate()?;
    let pi = std::f64::consts::PI;
    // sums over even-indexed nodes are reused after each doubling
    let node = |j: usize, n: usize| {
        let theta = 2.0 * pi * j as f64 / n as f64;
        f(2.0 * theta.cos()) * theta_weight(basis, theta)
    };
    let mut n = KM_MIN_NODES;
    let mut sum: Complex64 = (0..n).map(|j| node(j, n)).sum();
    let mut prev = sum * (pi / n as f64);
    while n < KM_MAX_NODES {
        let m = 2 * n;
        let odd: Complex64 = (0..n).map(|j| node(2 * j + 1, m)).sum();
        sum += odd;
        n = m;
        let cur = sum * (pi / n as f64);
        if (cur - prev).norm() <= tol * cur.norm().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence(format!(
        "Kesten-McKay quadrature did not settle to {tol:e} with {KM_MAX_NODES} nodes"
    )))
}

pub fn km_integrate_real<F>(basis: BasisTag, f: F, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    km_integrate(basis, |x| Complex64::new(f(x), 0.0), tol).map(|z| z.re)
}

/// Closed-form `∫ X_{2k,∞} dμ_q = q^{-k}` (odd indices vanish).
pub fn km_x_moment(basis: BasisTag, r: usize) -> f64 {
    if r % 2 == 1 {
        return 0.0;
    }
    basis.qinv().powi((r / 2) as i32)
}

/// Closed-form `∫ Y_r dμ_q`: `1` at `r = 0`, `q^{-k} − q^{-k+1}` at `r = 2k`.
pub fn km_y_moment(basis: BasisTag, r: usize) -> f64 {
    match r {
        0 => 1.0,
        _ if r % 2 == 1 => 0.0,
        _ => km_x_moment(basis, r) - km_x_moment(basis, r - 2),
    }
}

/// Geometric tail model `|a_r| ≤ c·τʳ` for `r ≥ from`. `tau = 0` marks a
/// finitely supported sequence: every coefficient from `from` on is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub c: f64,
    pub tau: f64,
    pub from: usize,
}

impl Decay {
    pub fn finite(len: usize) -> Self {
        Self {
            c: 0.0,
            tau: 0.0,
            from: len,
        }
    }

    pub fn is_finite_support(&self) -> bool {
        self.tau == 0.0
    }

    pub fn bound(&self, r: usize) -> f64 {
        if self.tau == 0.0 {
            return if r >= self.from { 0.0 } else { f64::INFINITY };
        }
        self.c * self.tau.powi(r as i32)
    }
}

/// Coefficients `a_0..a_R` of a function in one of the Chebyshev bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub basis: BasisTag,
    pub coeffs: Vec<Complex64>,
    pub decay: Option<Decay>,
}

/// Relative noise floor below which a coefficient counts as zero.
pub const NOISE_FLOOR: f64 = 1e-14;

impl CoefficientSeries {
    /// Builds a series, checking the declared decay against the stored
    /// coefficients (up to the noise floor).
    pub fn new(basis: BasisTag, coeffs: Vec<Complex64>, decay: Option<Decay>) -> Result<Self> {
        let basis = basis.validate()?;
        if let Some(d) = decay {
            if !(d.tau >= 0.0) || !(d.c >= 0.0) {
                return Err(Error::InvalidParameter("decay needs c, tau >= 0".into()));
            }
            let scale = max_abs(&coeffs).max(1.0);
            for (r, a) in coeffs.iter().enumerate().skip(d.from) {
                let b = if d.tau == 0.0 { 0.0 } else { d.bound(r) };
                if a.norm() > b * (1.0 + 1e-9) + NOISE_FLOOR * scale {
                    return Err(Error::InvalidParameter(format!(
                        "declared decay violated at r = {r}: |a| = {:e} > {b:e}",
                        a.norm()
                    )));
                }
            }
        }
        Ok(Self {
            basis,
            coeffs,
            decay,
        })
    }

    pub fn real(basis: BasisTag, coeffs: &[f64], decay: Option<Decay>) -> Result<Self> {
        Self::new(
            basis,
            coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            decay,
        )
    }

    /// A finitely supported series (a polynomial).
    pub fn polynomial(basis: BasisTag, coeffs: Vec<Complex64>) -> Result<Self> {
        let len = coeffs.len();
        Self::new(basis, coeffs, Some(Decay::finite(len)))
    }

    /// Fits a decay model on the stored coefficients and attaches it.
    pub fn with_fitted_decay(basis: BasisTag, coeffs: Vec<Complex64>) -> Result<Self> {
        let decay = fit_decay(&coeffs);
        Self::new(basis, coeffs, decay)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `a_r`, zero past the end of a finitely supported series.
    pub fn get(&self, r: usize) -> Complex64 {
        self.coeffs.get(r).copied().unwrap_or_default()
    }

    pub fn is_finite_support(&self) -> bool {
        self.decay.is_some_and(|d| d.is_finite_support())
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.eval_truncated(x, self.coeffs.len().saturating_sub(1))
    }

    /// `Σ_{r ≤ r_max} a_r X_{r,q}(x)`.
    pub fn eval_truncated(&self, x: Complex64, r_max: usize) -> Complex64 {
        let r_max = r_max.min(self.coeffs.len().saturating_sub(1));
        let vals = cheb_eval_all(self.basis, r_max, x);
        self.coeffs.iter().zip(vals).map(|(a, p)| a * p).sum()
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }
}

fn max_abs(c: &[Complex64]) -> f64 {
    c.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// Log-linear least-squares fit `|a_r| ≈ c·τʳ` on the last eight
/// coefficients above the noise floor.
///
/// Returns finite support when the significant coefficients stop early
/// and at least eight noise-level coefficients follow them, and `None`
/// when nothing can be said.
pub fn fit_decay(coeffs: &[Complex64]) -> Option<Decay> {
    let scale = max_abs(coeffs);
    if scale == 0.0 {
        return Some(Decay::finite(0));
    }
    let significant: Vec<usize> = (0..coeffs.len())
        .filter(|&r| coeffs[r].norm() > NOISE_FLOOR * scale)
        .collect();
    let last = *significant.last()?;
    let trailing_noise = coeffs.len() - 1 - last;
    let window: Vec<usize> = significant.iter().rev().take(8).rev().copied().collect();
    if window.len() < 2 {
        return (trailing_noise >= 8).then(|| Decay::finite(last + 1));
    }
    let pts: Vec<(f64, f64)> = window
        .iter()
        .map(|&r| (r as f64, coeffs[r].norm().ln()))
        .collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    let tau = (sxy / sxx).exp();
    if !(tau < 1.0) {
        return (trailing_noise >= 8).then(|| Decay::finite(last + 1));
    }
    let from = window[0];
    let c = (from..coeffs.len())
        .filter(|&r| coeffs[r].norm() > NOISE_FLOOR * scale)
        .map(|r| coeffs[r].norm() / tau.powi(r as i32))
        .fold(0.0, f64::max);
    Some(Decay { c, tau, from })
}

/// Largest tail error tolerated when an infinite tail sum is cut at the
/// stored length.
const CONVERT_TAIL_TOL: f64 = 1e-12;

/// Re-expands `s` in the `target` basis.
///
/// Going towards `Xinf` is a finite difference and loses the last two
/// coefficients unless `s` is finitely supported. Going away from `Xinf`
/// needs an infinite tail sum, bounded with the declared decay.
pub fn basis_convert(s: &CoefficientSeries, target: BasisTag) -> Result<CoefficientSeries> {
    let target = target.validate()?;
    if s.basis == target {
        return Ok(s.clone());
    }
    let hub = to_xinf(s)?;
    if target == BasisTag::Xinf {
        return Ok(hub);
    }
    from_xinf(&hub, target)
}

fn to_xinf(s: &CoefficientSeries) -> Result<CoefficientSeries> {
    if s.basis == BasisTag::Xinf {
        return Ok(s.clone());
    }
    let qinv = s.basis.qinv();
    let finite = s.is_finite_support();
    let len = if finite {
        s.len()
    } else {
        s.len().saturating_sub(2)
    };
    let coeffs: Vec<Complex64> = (0..len).map(|r| s.get(r) - s.get(r + 2) * qinv).collect();
    let decay = s.decay.map(|d| {
        if finite {
            Decay::finite(len)
        } else {
            Decay {
                c: d.c * (1.0 + qinv * d.tau * d.tau),
                ..d
            }
        }
    });
    CoefficientSeries::new(BasisTag::Xinf, coeffs, decay)
}

fn from_xinf(s: &CoefficientSeries, target: BasisTag) -> Result<CoefficientSeries> {
    let qinv = target.qinv();
    let len = s.len();
    let finite = s.is_finite_support();
    let decay = match s.decay {
        None if !finite => return Err(Error::MissingDecay),
        d => d,
    };
    let mut tail_decay = None;
    if !finite {
        let d = decay.expect("checked above");
        let ratio = d.tau * d.tau * qinv;
        if !(d.tau < 1.0) {
            return Err(Error::DivergentSeries { ratio: d.tau });
        }
        // coefficients past the stored length, summed with weights ≤ 1
        let tail = (len..len + 2).map(|m| d.bound(m)).fold(0.0, f64::max) / (1.0 - d.tau * d.tau);
        if tail > CONVERT_TAIL_TOL * max_abs(&s.coeffs).max(1.0) {
            return Err(Error::NoConvergence(format!(
                "stored series too short: tail bound {tail:e} after {len} coefficients"
            )));
        }
        tail_decay = Some(Decay {
            c: d.c / (1.0 - ratio),
            ..d
        });
    }
    let mut coeffs = vec![Complex64::zero(); len];
    // backward accumulation: a_{r,q} = a_{r,∞} + q^{-1} a_{r+2,q}
    for r in (0..len).rev() {
        let next = if r + 2 < len {
            coeffs[r + 2]
        } else {
            Complex64::zero()
        };
        coeffs[r] = s.coeffs[r] + next * qinv;
    }
    let decay = if finite {
        Some(Decay::finite(len))
    } else {
        tail_decay
    };
    CoefficientSeries::new(target, coeffs, decay)
}

/// Exact-rational version of a coefficient sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSeries {
    pub basis: BasisTag,
    pub coeffs: Vec<BigRational>,
}

impl ExactSeries {
    pub fn to_series(&self) -> CoefficientSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Complex64::new(rational_to_f64(c), 0.0))
            .collect();
        CoefficientSeries::polynomial(self.basis, coeffs).expect("finite series is valid")
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let r_max = self.coeffs.len().saturating_sub(1);
        let qinv = self.basis.qinv_exact();
        let mut plain: Vec<BigRational> = vec![BigRational::one(), x.clone()];
        for r in 1..r_max {
            let next = x * &plain[r] - &plain[r - 1];
            plain.push(next);
        }
        (0..=r_max)
            .map(|r| {
                let p = if r >= 2 {
                    &plain[r] - &qinv * &plain[r - 2]
                } else {
                    plain[r].clone()
                };
                &self.coeffs[r] * p
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

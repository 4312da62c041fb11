//! Bessel functions `I_n` and `J_n` of integer order and complex argument.
//!
//! Small arguments use the power series `Σ (z/2)^{2k+n}/(k!(k+n)!)`.
//! Larger ones use Miller's backward recurrence normalized by
//! `e^z = I_0(z) + 2Σ_{k≥1} I_k(z)`. `J` goes through `J_n(z) = (−i)^n I_n(iz)`,
//! which follows from the series (`I_n(iz) = iⁿ J_n(z)`).

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    I,
    J,
}

/// Above this modulus the series loses too much to cancellation.
const SERIES_RADIUS: f64 = 8.0;
const SERIES_MAX_TERMS: usize = 1000;
const RESCALE: f64 = 1e100;

/// `(−i)^n`
fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `iⁿ`
pub fn i_pow(n: usize) -> Complex64 {
    minus_i_pow(n).conj()
}

/// Power series for one order, summed until the term drops below
/// `tol·|sum|`.
pub fn bessel_series(kind: BesselKind, n: usize, z: Complex64, tol: f64) -> Result<Complex64> {
    let half = z * 0.5;
    let sq = match kind {
        BesselKind::I => half * half,
        BesselKind::J => -(half * half),
    };
    // (z/2)^n / n!
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    for k in 1..SERIES_MAX_TERMS {
        term *= sq / (k as f64 * (k + n) as f64);
        sum += term;
        if term.norm() <= tol * sum.norm() || term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence(format!(
        "Bessel series of order {n} at {z} after {SERIES_MAX_TERMS} terms"
    )))
}

/// `I_0(z), …, I_{n_max}(z)` by backward recurrence.
fn miller_i(n_max: usize, z: Complex64) -> Vec<Complex64> {
    // I_n(−z) = (−1)ⁿ I_n(z)
    if z.re < 0.0 {
        return miller_i(n_max, -z)
            .into_iter()
            .enumerate()
            .map(|(k, v)| if k % 2 == 1 { -v } else { v })
            .collect();
    }
    let a = z.norm();
    let m = n_max.max(a.ceil() as usize);
    let start = m + 30 + (40.0 * m as f64).sqrt() as usize;
    let mut vals = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut above = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    let mut norm = Complex64::new(0.0, 0.0);
    // I_{k−1} = (2k/z)·I_k + I_{k+1}
    for k in (1..=start).rev() {
        if k <= n_max {
            vals[k] = cur;
        }
        norm += cur * 2.0;
        let below = cur * (2.0 * k as f64) / z + above;
        above = cur;
        cur = below;
        if cur.norm() > RESCALE {
            let s = 1.0 / RESCALE;
            cur *= s;
            above *= s;
            norm *= s;
            for v in vals.iter_mut() {
                *v *= s;
            }
        }
    }
    vals[0] = cur;
    norm += cur;
    let ez = z.exp();
    vals.into_iter().map(|v| v / norm * ez).collect()
}

fn i_sequence(n_max: usize, z: Complex64) -> Result<Vec<Complex64>> {
    if z.norm() == 0.0 {
        let mut v = vec![Complex64::new(0.0, 0.0); n_max + 1];
        v[0] = Complex64::new(1.0, 0.0);
        return Ok(v);
    }
    if z.norm() <= SERIES_RADIUS {
        (0..=n_max)
            .map(|n| bessel_series(BesselKind::I, n, z, 1e-17))
            .collect()
    } else {
        Ok(miller_i(n_max, z))
    }
}

/// Orders `0..=n_max` of `I` or `J` at `z`.
pub fn bessel_sequence(kind: BesselKind, n_max: usize, z: Complex64) -> Result<Vec<Complex64>> {
    match kind {
        BesselKind::I => i_sequence(n_max, z),
        BesselKind::J => {
            let iz = Complex64::new(-z.im, z.re);
            Ok(i_sequence(n_max, iz)?
                .into_iter()
                .enumerate()
                .map(|(n, v)| v * minus_i_pow(n))
                .collect())
        }
    }
}

pub fn bessel(kind: BesselKind, n: usize, z: Complex64) -> Result<Complex64> {
    Ok(bessel_sequence(kind, n, z)?[n])
}

pub fn bessel_i(n: usize, x: f64) -> f64 {
    bessel(BesselKind::I, n, Complex64::new(x, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::NAN)
}

pub fn bessel_j(n: usize, x: f64) -> f64 {
    bessel(BesselKind::J, n, Complex64::new(x, 0.0))
        .map(|v| v.re)
        .unwrap_or(f64::NAN)
}

/// Orders `0..=n_max` of `I` at a real argument.
pub fn bessel_i_seq(n_max: usize, x: f64) -> Vec<f64> {
    bessel_sequence(BesselKind::I, n_max, Complex64::new(x, 0.0))
        .map(|v| v.into_iter().map(|z| z.re).collect())
        .unwrap_or_else(|_| vec![f64::NAN; n_max + 1])
}

/// Orders `0..=n_max` of `J` at a real argument.
pub fn bessel_j_seq(n_max: usize, x: f64) -> Vec<f64> {
    bessel_sequence(BesselKind::J, n_max, Complex64::new(x, 0.0))
        .map(|v| v.into_iter().map(|z| z.re).collect())
        .unwrap_or_else(|_| vec![f64::NAN; n_max + 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i(0, 0.0), 1.0);
        assert_eq!(bessel_i(3, 0.0), 0.0);
        assert_eq!(bessel_j(0, 0.0), 1.0);
    }

    #[test]
    fn reference_values() {
        assert!((bessel_j(0, 10.0) - -0.245_935_764_451_348_3).abs() < 1e-13);
        assert!((bessel_i(0, 10.0) / 2_815.716_628_466_254 - 1.0).abs() < 1e-13);
        assert!((bessel_i(1, 1.0) - 0.565_159_103_992_485).abs() < 1e-15);
        assert!((bessel_j(2, 3.0) - 0.486_091_260_585_891_1).abs() < 1e-14);
    }

    #[test]
    fn series_and_recurrence_agree_at_crossover() {
        for &x in &[7.5, 8.5, 12.0] {
            let z = c(x);
            let miller = miller_i(10, z);
            for (n, m) in miller.iter().enumerate() {
                let s = bessel_series(BesselKind::I, n, z, 1e-17).unwrap();
                assert!((s - m).norm() <= 1e-13 * s.norm(), "I_{n}({x})");
            }
        }
    }

    #[test]
    fn imaginary_argument_relation() {
        let z = Complex64::new(1.3, 0.4);
        let iz = Complex64::new(-z.im, z.re);
        for n in 0..6 {
            let lhs = bessel(BesselKind::I, n, iz).unwrap();
            let rhs = i_pow(n) * bessel_series(BesselKind::J, n, z, 1e-17).unwrap();
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn reflection() {
        for n in 0..5 {
            let a = bessel(BesselKind::I, n, c(-9.0)).unwrap();
            let b = bessel(BesselKind::I, n, c(9.0)).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - b * sign).norm() < 1e-12 * b.norm());
        }
    }
}

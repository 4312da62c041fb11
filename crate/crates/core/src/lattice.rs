//! Closed forms on the integer lattice `Z^D` and on regular trees.
//!
//! `(e^{−tΔ})_{m,n} = e^{−2Dt} Π_k I_{|m_k−n_k|}(2t)` on the lattice, walk
//! counts `W_{d+2k} = Σ_{k_1+…+k_D=k} (d+2k)! Π_l 1/(k_l!(k_l+d_l)!)`, and on the
//! `(q+1)`-regular tree `W_{d+2k} = Σ_{m≤k} (C(d+2k,m) − C(d+2k,m−1)) qᵐ`.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::bessel::{bessel_sequence, BesselKind};
use crate::error::{Error, Result};
use crate::numeric::ballot;

fn offsets(m: &[i64], n: &[i64]) -> Result<Vec<u64>> {
    if m.is_empty() || m.len() != n.len() {
        return Err(Error::InvalidParameter(format!(
            "lattice points of dimensions {} and {}",
            m.len(),
            n.len()
        )));
    }
    Ok(m.iter().zip(n).map(|(a, b)| a.abs_diff(*b)).collect())
}

/// `(e^{−tΔ})_{m,n}` on `Z^D`, `D = m.len()`.
pub fn lattice_heat_entry(m: &[i64], n: &[i64], t: f64) -> Result<f64> {
    let d = offsets(m, n)?;
    let dim = d.len() as f64;
    let top = *d.iter().max().expect("nonempty") as usize;
    let seq = bessel_sequence(BesselKind::I, top, Complex64::new(2.0 * t, 0.0))?;
    let prod: f64 = d.iter().map(|&k| seq[k as usize].re).product();
    Ok((-2.0 * dim * t).exp() * prod)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

/// Number of walks of the given length between `m` and `n` on `Z^D`.
pub fn lattice_walk_count(m: &[i64], n: &[i64], length: u64) -> Result<BigUint> {
    let d = offsets(m, n)?;
    let dist: u64 = d.iter().sum();
    if length < dist || (length - dist) % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let k = (length - dist) / 2;
    let top = factorial(length);
    // enumerate k_1 + … + k_D = k
    let mut total = BigUint::zero();
    let mut parts = vec![0u64; d.len()];
    compositions(k, 0, &mut parts, &mut |ks| {
        let den = ks.iter().zip(&d).fold(BigUint::one(), |a, (&kl, &dl)| {
            a * factorial(kl) * factorial(kl + dl)
        });
        total += &top / den;
    });
    Ok(total)
}

fn compositions(left: u64, i: usize, parts: &mut [u64], f: &mut impl FnMut(&[u64])) {
    if i + 1 == parts.len() {
        parts[i] = left;
        f(parts);
        return;
    }
    for v in 0..=left {
        parts[i] = v;
        compositions(left - v, i + 1, parts, f);
    }
}

/// Walks of length `d + 2k` between two vertices at distance `d` on the
/// `(q+1)`-regular tree.
pub fn tree_walk_count(q: u64, d: u64, k: u64) -> Result<BigInt> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be >= 1".into()));
    }
    let n = (d + 2 * k) as i64;
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    let mut qm = BigInt::one();
    for m in 0..=k as i64 {
        total += ballot(n, m) * &qm;
        qm *= &qb;
    }
    Ok(total)
}

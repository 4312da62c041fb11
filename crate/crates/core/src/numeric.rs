//! Exact combinatorics and compensated summation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `C(n, k)` as a big integer; zero when `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `C(n, k) − C(n, k−1)`, the ballot difference that shows up in every
/// non-backtracking expansion of a power.
pub fn ballot(n: i64, k: i64) -> BigInt {
    binom(n, k) - binom(n, k - 1)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // numerator/denominator may overflow f64 separately
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.denom().bits().max(r.numer().bits()) as i64 - 60;
            let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub fn big_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `q^{-k}` as an exact rational.
pub fn inv_pow(q: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(k))
}

/// Neumaier compensated sum over complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn add_real(&mut self, x: f64) {
        neumaier(&mut self.re, x);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

pub fn kahan_real(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = KahanSum::new();
    for x in xs {
        s.add_real(x);
    }
    s.value().re
}

/// `n!` as f64 (exact through 22!, rounded beyond).
pub fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 3), BigInt::from(20));
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(ballot(4, 2), BigInt::from(2));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(kahan_real(xs), 2.0);
    }

    #[test]
    fn huge_rational_to_float() {
        let r = big_ratio(
            BigInt::from(3) * BigInt::from(10).pow(400),
            BigInt::from(10).pow(400),
        );
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}

//! Truncated formal power series over the rationals and the integer
//! characteristic polynomial.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `Σ_{k≤N} a_k tᵏ`, everything past `N = order` discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
            order,
        )
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let c = (1..=n)
            .map(|k| &self.coeffs[k] * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Self::new(c, n)
    }

    /// `1/self`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::InvalidParameter("series has no reciprocal".into()));
        }
        let n = self.order();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = a0.recip();
        for k in 1..=n {
            let s = (1..=k).fold(BigRational::zero(), |acc, j| {
                acc + &self.coeffs[j] * &b[k - j]
            });
            b[k] = -s / a0;
        }
        Ok(Self::new(b, n))
    }

    /// Formal `log`, for constant term `1`: `L' = S'/S`, `L(0) = 0`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidParameter(
                "formal log needs constant term 1".into(),
            ));
        }
        let n = self.order();
        let d = &self.derivative() * &self.reciprocal()?;
        let mut c = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            c[k] = d.get(k - 1) / BigRational::from_integer(BigInt::from(k));
        }
        Ok(Self::new(c, n))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), self.order())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(crate::numeric::rational_to_f64)
            .collect()
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        PowerSeries::new(c, n)
    }
}

/// `(1 + c·t^step)^e` through order `order`, exact binomial expansion for
/// any integer exponent.
pub fn binomial_power(c: &BigRational, step: usize, e: i64, order: usize) -> PowerSeries {
    let mut out = vec![BigRational::zero(); order + 1];
    let mut coef = BigRational::one();
    let mut cp = BigRational::one();
    let mut j = 0usize;
    while j * step <= order {
        out[j * step] = &coef * &cp;
        // C(e, j+1) = C(e, j)·(e−j)/(j+1)
        coef = coef * BigRational::from_integer(BigInt::from(e - j as i64))
            / BigRational::from_integer(BigInt::from(j as i64 + 1));
        if coef.is_zero() {
            break;
        }
        cp *= c;
        j += 1;
        if step == 0 {
            break;
        }
    }
    PowerSeries::new(out, order)
}

/// `det(λI − A) = Σ_k p_k λᵏ` by Faddeev–LeVerrier in exact integers.
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.order();
    let big =
        |m: &IntMatrix| -> Vec<BigInt> { m.as_slice().iter().map(|&v| BigInt::from(v)).collect() };
    let av = big(a);
    let mut p = vec![BigInt::zero(); n + 1];
    p[n] = BigInt::one();
    // M_k = A·M_{k−1} + p_{n−k+1} I, starting from M_0 = 0
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !av[i * n + l].is_zero() && !m[l * n + j].is_zero() {
                        s += &av[i * n + l] * &m[l * n + j];
                    }
                }
                next[i * n + j] = s;
            }
            next[i * n + i] += &p[n - k + 1];
        }
        m = next;
        // p_{n−k} = −tr(A·M_k)/k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &av[i * n + l] * &m[l * n + i];
            }
        }
        p[n - k] = -tr / BigInt::from(k);
    }
    p
}

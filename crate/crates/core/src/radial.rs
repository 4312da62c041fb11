//! Radial functions on the `(q+1)`-regular tree: the horocycle transform,
//! its inverse and the embedding `Φ` into `L²(μ_q)`.
//!
//! For finitely supported `f` the function `h = Σ_{n≥0} Hf(n) q^{n/2} Y_n`
//! has `Y`-coefficients `Hf(n)q^{n/2}` and `X_{·,q}`-coefficients `f(n)q^{n/2}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cheb::{cheb_coefficients, BasisTag, CoefficientSeries};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::numeric::rational_to_f64;

/// `f(0..=N)` on the distance shells around the root; zero beyond `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub q: u64,
    pub values: Vec<BigRational>,
}

impl RadialFunction {
    pub fn new(q: u64, values: Vec<BigRational>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be >= 1".into()));
        }
        Ok(Self { q, values })
    }

    pub fn from_integers(q: u64, values: &[i64]) -> Result<Self> {
        Self::new(
            q,
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn get(&self, r: usize) -> BigRational {
        self.values
            .get(r)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Indicator of one shell.
    pub fn delta(q: u64, shell: usize) -> Result<Self> {
        let mut values = vec![BigRational::zero(); shell + 1];
        values[shell] = BigRational::one();
        Self::new(q, values)
    }
}

/// Even two-sided sequence `Hf(n) = Hf(−n)`, stored for `n ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HorocycleTransform {
    pub q: u64,
    pub values: Vec<BigRational>,
}

impl HorocycleTransform {
    pub fn at(&self, n: i64) -> BigRational {
        self.values
            .get(n.unsigned_abs() as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

/// `Hf(n) = f(|n|) + (q−1)Σ_{j≥1} q^{j−1} f(|n|+2j)`.
pub fn horocycle_transform(f: &RadialFunction) -> HorocycleTransform {
    let q = BigRational::from_integer(BigInt::from(f.q));
    let qm1 = &q - BigRational::one();
    let len = f.values.len();
    let values = (0..len)
        .map(|n| {
            let mut acc = f.get(n);
            let mut w = qm1.clone();
            let mut m = n + 2;
            while m < len {
                acc += &w * &f.values[m];
                w *= &q;
                m += 2;
            }
            acc
        })
        .collect();
    HorocycleTransform { q: f.q, values }
}

/// `f(n) = Hf(n) − (q−1)Σ_{j≥1} Hf(n+2j)`.
pub fn inverse_horocycle(hf: &HorocycleTransform) -> RadialFunction {
    let qm1 = BigRational::from_integer(BigInt::from(hf.q) - 1);
    let len = hf.values.len();
    let values = (0..len)
        .map(|n| {
            let tail = (n + 2..len)
                .step_by(2)
                .fold(BigRational::zero(), |a, m| a + &hf.values[m]);
            &hf.values[n] - &qm1 * tail
        })
        .collect();
    RadialFunction { q: hf.q, values }
}

/// `h = Σ_n Hf(n) q^{n/2} Y_n` as a polynomial in `x` (monomial
/// coefficients), the spherical transform of `f` read as a function of
/// `x = z + 1/z`.
pub fn spherical_polynomial(f: &RadialFunction) -> FunctionSpec {
    let hf = horocycle_transform(f);
    let len = hf.values.len();
    let sq = (f.q as f64).sqrt();
    let mut mono = vec![Complex64::zero(); len.max(1)];
    for (n, v) in hf.values.iter().enumerate() {
        let w = rational_to_f64(v) * sq.powi(n as i32);
        for (k, c) in cheb_coefficients(BasisTag::Y, n).iter().enumerate() {
            mono[k] += w * rational_to_f64(c);
        }
    }
    FunctionSpec::polynomial(mono)
}

/// `Φ(f) = f(0) + (1+q^{-1})^{-1} Σ_{r≥1} f(r) q^{r/2} X_{r,q}`.
pub fn radial_embedding(f: &RadialFunction) -> Result<CoefficientSeries> {
    let qf = f.q as f64;
    let damp = 1.0 / (1.0 + 1.0 / qf);
    let coeffs = f
        .values
        .iter()
        .enumerate()
        .map(|(r, v)| {
            let x = rational_to_f64(v);
            Complex64::new(
                if r == 0 {
                    x
                } else {
                    damp * x * qf.powf(r as f64 / 2.0)
                },
                0.0,
            )
        })
        .collect();
    CoefficientSeries::polynomial(BasisTag::for_q(f.q), coeffs)
}

/// `f(0)g(0) + (1+q^{-1})^{-1} Σ_{r≥1} f(r)g(r)qʳ`, the value
/// `⟨Φf, Φg⟩_{μ_q}` must take.
pub fn embedding_inner_product(f: &RadialFunction, g: &RadialFunction) -> Result<BigRational> {
    if f.q != g.q {
        return Err(Error::InvalidParameter(
            "radial functions on different trees".into(),
        ));
    }
    let q = BigRational::from_integer(BigInt::from(f.q));
    let damp = &q / (&q + BigRational::one());
    let mut acc = f.get(0) * g.get(0);
    let mut qr = BigRational::one();
    for r in 1..f.values.len().max(g.values.len()) {
        qr *= &q;
        acc += &damp * f.get(r) * g.get(r) * &qr;
    }
    Ok(acc)
}

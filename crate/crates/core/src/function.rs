//! Test functions `h` and the holomorphy data the trace formulas need.
//!
//! The ellipse `Ω(ρ)` is the Joukowsky image `ξ ↦ ξ + 1/ξ` of `|ξ| < ρ`
//! minus the closed unit disk; every consumer requires `ρ > √q`.

use num_complex::Complex64;

use crate::cheb::{cheb_coefficients, cheb_eval, BasisTag};
use crate::error::{Error, Result};
use crate::numeric::rational_to_f64;

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// `e^{zx}`
    Exp(Complex64),
    /// `e^{ipx}`
    OscillatoryExp(Complex64),
    /// `xⁿ`
    Monomial(u32),
    /// `log(1 − xt + t²)`
    ShiftedLog(f64),
    /// `X_{r,q}` of the given basis
    Chebyshev(BasisTag, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// `Σ bₙxⁿ` with radius of convergence `radius`; a finite list with
    /// infinite radius is a polynomial.
    Taylor {
        coeffs: Vec<Complex64>,
        radius: f64,
    },
    /// Values `h(ξ + 1/ξ)` at `ξ_j = τ·e^{2πij/N}` and the claimed `ρ`.
    CircleSamples {
        values: Vec<Complex64>,
        tau: f64,
        rho: f64,
    },
    Builtin(Builtin),
}

impl FunctionSpec {
    pub fn exp(z: f64) -> Self {
        FunctionSpec::Builtin(Builtin::Exp(Complex64::new(z, 0.0)))
    }

    pub fn exp_complex(z: Complex64) -> Self {
        FunctionSpec::Builtin(Builtin::Exp(z))
    }

    pub fn oscillatory_exp(p: f64) -> Self {
        FunctionSpec::Builtin(Builtin::OscillatoryExp(Complex64::new(p, 0.0)))
    }

    pub fn monomial(n: u32) -> Self {
        FunctionSpec::Builtin(Builtin::Monomial(n))
    }

    pub fn chebyshev(basis: BasisTag, r: usize) -> Self {
        FunctionSpec::Builtin(Builtin::Chebyshev(basis, r))
    }

    pub fn shifted_log(t: f64) -> Self {
        FunctionSpec::Builtin(Builtin::ShiftedLog(t))
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        FunctionSpec::Taylor {
            coeffs,
            radius: f64::INFINITY,
        }
    }

    /// The exponent `z` of `e^{zx}` for both exponential builtins.
    pub fn exp_rate(&self) -> Option<Complex64> {
        match self {
            FunctionSpec::Builtin(Builtin::Exp(z)) => Some(*z),
            FunctionSpec::Builtin(Builtin::OscillatoryExp(p)) => Some(Complex64::new(-p.im, p.re)),
            _ => None,
        }
    }

    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        Ok(match self {
            FunctionSpec::Taylor { coeffs, .. } => coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, b| acc * x + b),
            FunctionSpec::CircleSamples { .. } => {
                return Err(Error::InvalidParameter(
                    "circle samples can only be integrated, not evaluated".into(),
                ))
            }
            FunctionSpec::Builtin(b) => match b {
                Builtin::Exp(_) | Builtin::OscillatoryExp(_) => {
                    (self.exp_rate().expect("exponential") * x).exp()
                }
                Builtin::Monomial(n) => x.powu(*n),
                Builtin::ShiftedLog(t) => (1.0 - x * *t + t * t).ln(),
                Builtin::Chebyshev(basis, r) => cheb_eval(*basis, *r, x),
            },
        })
    }

    pub fn eval_real(&self, x: f64) -> Result<Complex64> {
        self.eval(Complex64::new(x, 0.0))
    }

    /// `ρ` of the largest ellipse `Ω(ρ)` the function is known to be
    /// holomorphic on.
    pub fn holo_radius(&self) -> f64 {
        match self {
            FunctionSpec::Taylor { radius, .. } => {
                if radius.is_infinite() {
                    f64::INFINITY
                } else if *radius <= 2.0 {
                    1.0
                } else {
                    (radius + (radius * radius - 4.0).sqrt()) / 2.0
                }
            }
            FunctionSpec::CircleSamples { rho, .. } => *rho,
            FunctionSpec::Builtin(Builtin::ShiftedLog(t)) => {
                if *t == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / t.abs()
                }
            }
            FunctionSpec::Builtin(_) => f64::INFINITY,
        }
    }

    /// Degree when `h` is a polynomial.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self {
            FunctionSpec::Taylor { coeffs, radius } if radius.is_infinite() => Some(
                coeffs
                    .iter()
                    .rposition(|c| *c != Complex64::new(0.0, 0.0))
                    .unwrap_or(0),
            ),
            FunctionSpec::Builtin(Builtin::Monomial(n)) => Some(*n as usize),
            FunctionSpec::Builtin(Builtin::Chebyshev(_, r)) => Some(*r),
            FunctionSpec::Builtin(Builtin::Exp(z))
            | FunctionSpec::Builtin(Builtin::OscillatoryExp(z))
                if z.norm() == 0.0 =>
            {
                Some(0)
            }
            FunctionSpec::Builtin(Builtin::ShiftedLog(t)) if *t == 0.0 => Some(0),
            _ => None,
        }
    }

    /// Taylor coefficients `b_0..b_{n_max}` at the origin, when available.
    pub fn taylor_coeffs(&self, n_max: usize) -> Result<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = vec![zero; n_max + 1];
        match self {
            FunctionSpec::Taylor { coeffs, .. } => {
                for (o, c) in out.iter_mut().zip(coeffs) {
                    *o = *c;
                }
            }
            FunctionSpec::Builtin(Builtin::Exp(_))
            | FunctionSpec::Builtin(Builtin::OscillatoryExp(_)) => {
                let z = self.exp_rate().expect("exponential");
                let mut term = Complex64::new(1.0, 0.0);
                for (n, o) in out.iter_mut().enumerate() {
                    *o = term;
                    term *= z / (n + 1) as f64;
                }
            }
            FunctionSpec::Builtin(Builtin::Monomial(n)) => {
                if let Some(o) = out.get_mut(*n as usize) {
                    *o = Complex64::new(1.0, 0.0);
                }
            }
            FunctionSpec::Builtin(Builtin::Chebyshev(basis, r)) => {
                for (o, c) in out.iter_mut().zip(cheb_coefficients(*basis, *r)) {
                    *o = Complex64::new(rational_to_f64(&c), 0.0);
                }
            }
            FunctionSpec::Builtin(Builtin::ShiftedLog(t)) => {
                // log(1 − xt + t²) = log(1 + t²) + log(1 − x·t/(1 + t²))
                let s = t / (1.0 + t * t);
                out[0] = Complex64::new((1.0 + t * t).ln(), 0.0);
                for (n, o) in out.iter_mut().enumerate().skip(1) {
                    *o = Complex64::new(-s.powi(n as i32) / n as f64, 0.0);
                }
            }
            FunctionSpec::CircleSamples { .. } => {
                return Err(Error::InvalidParameter(
                    "circle samples carry no Taylor series".into(),
                ))
            }
        }
        Ok(out)
    }

    /// Radius of convergence of the Taylor series at the origin.
    pub fn taylor_radius(&self) -> f64 {
        match self {
            FunctionSpec::Taylor { radius, .. } => *radius,
            FunctionSpec::Builtin(Builtin::ShiftedLog(t)) => {
                if *t == 0.0 {
                    f64::INFINITY
                } else {
                    (1.0 + t * t) / t.abs()
                }
            }
            FunctionSpec::CircleSamples { .. } => 0.0,
            FunctionSpec::Builtin(_) => f64::INFINITY,
        }
    }

    /// Rejects `h` unless it is holomorphic on `Ω(ρ)` for some `ρ > √q`.
    pub fn require_radius(&self, q: u64) -> Result<()> {
        let rho = self.holo_radius();
        let sq = (q as f64).sqrt();
        if rho > sq {
            Ok(())
        } else {
            Err(Error::DivergentSeries { ratio: sq / rho })
        }
    }
}

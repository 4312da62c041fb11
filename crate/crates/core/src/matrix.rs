//! Small dense matrices.
//!
//! Orders in this crate stay in the hundreds, so everything is row-major
//! `Vec` storage with naive products. Integer matrices (`i128`) carry the
//! exact walk counts, `f64`/`Complex64` matrices carry operator values.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dense<T> {
    order: usize,
    data: Vec<T>,
}

pub type IntMatrix = Dense<i128>;
pub type ComplexMatrix = Dense<Complex64>;

impl<T: Copy + Zero> Dense<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![T::zero(); order * order],
        }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Copy + Zero>(&self, f: impl Fn(T) -> U) -> Dense<U> {
        Dense {
            order: self.order,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }
}

impl<T: Copy + Zero + Add<Output = T>> Dense<T> {
    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }
}

impl<T> Dense<T>
where
    T: Copy + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`, row-major pairing `(i, j) ↦ i·m + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.order;
        Self::from_fn(self.order * m, |r, c| {
            self.get(r / m, c / m) * other.get(r % m, c % m)
        })
    }

    pub fn mat_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.order)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }
}

impl<T: Copy + Zero + num_traits::One> Dense<T> {
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Copy + Zero + Add<Output = T>> Add for &Dense<T> {
    type Output = Dense<T>;

    fn add(self, rhs: Self) -> Dense<T> {
        assert_eq!(self.order, rhs.order, "order mismatch");
        Dense {
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Dense<f64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order, "order mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| x * s)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }
}

impl Dense<Complex64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order, "order mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i).conj())
    }

    pub fn real_part(&self) -> Dense<f64> {
        self.map(|z| z.re)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl IntMatrix {
    pub fn to_f64(&self) -> Dense<f64> {
        self.map(|x| x as f64)
    }

    /// `self · other` with overflow detection.
    pub fn checked_matmul(&self, other: &Self) -> Result<Self> {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow("integer matrix product"))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}

/// Real symmetric matrix: adjacency matrices, non-backtracking matrices,
/// Laplacians and real matrix functions of them.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetricMatrix(Dense<f64>);

impl DenseSymmetricMatrix {
    /// Wraps `m`, rejecting it unless it is exactly symmetric.
    pub fn new(m: Dense<f64>) -> Result<Self> {
        let n = m.order();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "matrix order must be positive".into(),
            ));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidParameter(format!(
                        "matrix not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self(m))
    }

    /// Symmetrizes `(m + mᵀ)/2`; used for numerically computed operators.
    pub fn symmetrize(m: &Dense<f64>) -> Self {
        let n = m.order();
        Self(Dense::from_fn(n, |i, j| 0.5 * (m.get(i, j) + m.get(j, i))))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn dense(&self) -> &Dense<f64> {
        &self.0
    }

    pub fn into_dense(self) -> Dense<f64> {
        self.0
    }
}

impl From<DenseSymmetricMatrix> for Dense<f64> {
    fn from(m: DenseSymmetricMatrix) -> Self {
        m.0
    }
}

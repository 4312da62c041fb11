//! Non-backtracking walks, Chebyshev-type expansions and discrete trace
//! formulas on finite regular graphs, with closed-form kernels on regular
//! trees and integer lattices.
//!
//! Every identity the library implements has an independent oracle
//! (brute-force enumeration, dense eigendecomposition, exact rational
//! series) that the test suite checks it against.

pub mod bessel;
pub mod cheb;
pub mod coeff;
pub mod eigen;
pub mod error;
pub mod function;
pub mod generators;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod lattice;
pub mod matrix;
pub mod nbw;
pub mod numeric;
pub mod radial;
pub mod series;
pub mod spectral;
pub mod trace;
pub mod zeta;

pub use cheb::{BasisTag, CoefficientSeries, Decay};
pub use error::{Error, Result};
pub use function::FunctionSpec;
pub use generators::Family;
pub use graph::RegularGraph;
pub use matrix::{ComplexMatrix, Dense, DenseSymmetricMatrix, IntMatrix};
pub use spectral::DiscreteMeasure;

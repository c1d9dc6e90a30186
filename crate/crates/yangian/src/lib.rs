//! Exact symbolic construction and verification of Yangian-type Hopf
//! algebras over sl(2): the deformed mode algebra itself, its two-parameter
//! family, the boundary algebra over the cotangent-bundle Lie algebra, and
//! the factor algebra with its explicit twist and spectral R-matrix.
//!
//! Everything is computed over exact multivariate rational functions, so
//! every verified identity holds symbolically, not at sampled points.

pub mod cybe;
pub mod evalrep;
pub mod ncalg;
pub mod presentations;
pub mod report;
pub mod scalar;

pub use ncalg::{AlgError, CommTable, Family, GenId, NCPoly, TensorPoly, Word};
pub use scalar::{ParamId, Scalar, ScalarError};

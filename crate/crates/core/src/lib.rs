//! Exact homological algebra for commutative bigraded bidifferential algebras.
//!
//! The crate computes Dolbeault, Bott-Chern, Aeppli and de Rham cohomology of
//! finite bicomplexes and degree-truncated free cbbas over the Gaussian
//! rationals, decides the ddbar-Lemma and Serre-type duality, decomposes
//! finite bicomplexes into dots, squares and zigzags, and constructs and
//! verifies the splitting certificates that witness (s-)strong formality.
//!
//! All arithmetic is exact: scalars are Gaussian rationals and every verdict
//! is an exact subspace inclusion, never a numerical test.

pub mod algebra;
pub mod builder;
pub mod cohomology;
pub mod corpus;
pub mod ddbar;
pub mod error;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod splitting;
pub mod zigzag;

#[cfg(test)]
pub(crate) mod testfix;

pub use algebra::{Algebra, Bidegree, Element, FiniteBicomplex, FreeCbba};
pub use error::Error;
pub use scalar::Scalar;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

//! Discrete-time quasi-birth-and-death processes driven by the first family
//! of bivariate Jacobi polynomials on the swallow-tail region.
//!
//! The crate constructs the block tridiagonal Jacobi operators of the
//! two-variable three-term recurrence, classifies when their convex
//! combinations are stochastic, verifies the spectral identities
//! (Karlin-McGregor representation, invariant measure, recurrence
//! classification) against quadrature over the region, and simulates the
//! resulting chains, including the two-urn sampling scheme of the symmetric
//! integer-parameter case.

pub mod coeffs;
pub mod error;
pub mod operator;
pub mod params;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use params::ModelParameters;

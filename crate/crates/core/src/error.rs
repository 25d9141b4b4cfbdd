//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the admissible set, or an operation applied where
    /// its mathematical definition does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// A denominator of a closed-form expression vanished.
    #[error("pole: {0}")]
    Pole(String),

    /// An (n, k) pair outside the index range of a coefficient family.
    #[error("index out of range: {0}")]
    IndexRange(String),

    /// Quadrature construction or self-consistency failure.
    #[error("quadrature: {0}")]
    Quadrature(String),

    /// A transition row failed the stochasticity tolerance during simulation.
    #[error("row sum deviates from 1 by {deviation:e} at state ({level},{phase})")]
    RowSum {
        level: usize,
        phase: usize,
        deviation: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

//! Model parameters and admissibility.

use crate::error::{Error, Result};

/// Weight exponents (alpha, beta, gamma) plus the optional convex-combination
/// weight tau. This is the single source of truth consumed by every formula.
///
/// Admissibility (integrability of the weight over the region):
/// alpha, beta, gamma > -1, alpha + gamma + 3/2 > 0, beta + gamma + 3/2 > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParameters {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub tau: Option<f64>,
}

impl ModelParameters {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = ModelParameters {
            alpha,
            beta,
            gamma,
            tau: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_tau(alpha: f64, beta: f64, gamma: f64, tau: f64) -> Result<Self> {
        let p = ModelParameters {
            alpha,
            beta,
            gamma,
            tau: Some(tau),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        if !(a > -1.0 && b > -1.0 && g > -1.0) {
            return Err(Error::Domain(format!(
                "need alpha, beta, gamma > -1, got ({a}, {b}, {g})"
            )));
        }
        if !(a + g + 1.5 > 0.0) {
            return Err(Error::Domain(format!(
                "need alpha + gamma + 3/2 > 0, got {}",
                a + g + 1.5
            )));
        }
        if !(b + g + 1.5 > 0.0) {
            return Err(Error::Domain(format!(
                "need beta + gamma + 3/2 > 0, got {}",
                b + g + 1.5
            )));
        }
        if let Some(t) = self.tau {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Domain(format!("need tau in [0, 1], got {t}")));
            }
        }
        Ok(())
    }

    /// The tau value, or an error when a stochastic model is required.
    pub fn tau(&self) -> Result<f64> {
        self.tau
            .ok_or_else(|| Error::Domain("tau required but not set".into()))
    }

    /// Parameters with alpha and beta exchanged (used by the tilde operators
    /// normalized at the other corner of the region).
    pub fn swapped(&self) -> Self {
        ModelParameters {
            alpha: self.beta,
            beta: self.alpha,
            gamma: self.gamma,
            tau: self.tau,
        }
    }
}

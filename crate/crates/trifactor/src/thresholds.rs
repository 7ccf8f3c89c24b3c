//! Runtime constant bundle for audits and reachability.
//!
//! The asymptotic hierarchy behind these constants is not computed here; all
//! of them are explicit run parameters, exact rationals in `[0, 1]` plus the
//! linking length `ell`.

use crate::exact::Rat;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("{name} = {value} outside [0, 1]")]
    OutOfRange { name: &'static str, value: Rat },
    #[error("ell must be >= 1")]
    BadEll,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub c: Rat,
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub mu: Rat,
    pub xi: Rat,
    pub eta: Rat,
    pub ell: u32,
}

impl Thresholds {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: Rat,
        alpha: Rat,
        beta: Rat,
        gamma: Rat,
        mu: Rat,
        xi: Rat,
        eta: Rat,
        ell: u32,
    ) -> Result<Self, ThresholdError> {
        let unit = |name: &'static str, value: Rat| -> Result<Rat, ThresholdError> {
            if value < Rat::zero() || value > Rat::one() {
                Err(ThresholdError::OutOfRange { name, value })
            } else {
                Ok(value)
            }
        };
        if ell == 0 {
            return Err(ThresholdError::BadEll);
        }
        Ok(Thresholds {
            c: unit("c", c)?,
            alpha: unit("alpha", alpha)?,
            beta: unit("beta", beta)?,
            gamma: unit("gamma", gamma)?,
            mu: unit("mu", mu)?,
            xi: unit("xi", xi)?,
            eta: unit("eta", eta)?,
            ell,
        })
    }
}

impl Default for Thresholds {
    /// Small desk-scale defaults; audits take the effective `c` from the
    /// graph itself, so the `c` stored here is only a placeholder.
    fn default() -> Self {
        Thresholds {
            c: Rat::new(1, 18),
            alpha: Rat::new(1, 100),
            beta: Rat::new(1, 100),
            gamma: Rat::new(1, 20),
            mu: Rat::zero(),
            xi: Rat::new(1, 20),
            eta: Rat::new(1, 10),
            ell: 1,
        }
    }
}

//! Size guards for the exponential-time routines.
//!
//! Voter-subset enumerations (PJR, GFS) are bounded by `max_n`; candidate-subset
//! enumerations in EJR and FJR by `max_m`. Both are capped at 63 because the
//! enumerations index subsets with a `u64` mask. GCR only checks the hard cap
//! and warns past [`GCR_SOFT_LIMIT_M`].

use crate::error::{Error, Result};

pub const DEFAULT_MAX_N: usize = 20;
pub const DEFAULT_MAX_M: usize = 20;
pub const HARD_CAP: usize = 63;
/// Above this many candidates GCR still runs but logs a warning.
pub const GCR_SOFT_LIMIT_M: usize = 12;

pub const ENV_MAX_N: &str = "BWCV_MAX_N";
pub const ENV_MAX_M: &str = "BWCV_MAX_M";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: DEFAULT_MAX_N,
            max_m: DEFAULT_MAX_M,
        }
    }
}

impl Limits {
    /// Defaults overridden by `BWCV_MAX_N` / `BWCV_MAX_M` when set to an integer.
    pub fn from_env() -> Self {
        let read = |key: &str, default: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .unwrap_or(default)
        };
        Limits {
            max_n: read(ENV_MAX_N, DEFAULT_MAX_N),
            max_m: read(ENV_MAX_M, DEFAULT_MAX_M),
        }
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        let limit = self.max_n.min(HARD_CAP);
        if n > limit {
            return Err(Error::SizeLimitExceeded {
                what: "n",
                value: n,
                limit,
            });
        }
        Ok(())
    }

    pub fn check_m(&self, m: usize) -> Result<()> {
        let limit = self.max_m.min(HARD_CAP);
        if m > limit {
            return Err(Error::SizeLimitExceeded {
                what: "m",
                value: m,
                limit,
            });
        }
        Ok(())
    }
}

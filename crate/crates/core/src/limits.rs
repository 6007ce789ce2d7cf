//! Enumeration guards shared by the exact routes.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bounds on instance sizes for the enumeration-heavy routes.
///
/// `HWZ_MAX_N`, when set, overrides every `n` bound at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest `n` for depth-first transposition-path search.
    pub max_n_dfs: usize,
    /// Largest `n` for dense vectors over the group algebra of `S_n`.
    pub max_n_groupalgebra: usize,
    /// Largest `n` for full `S_n` sums in the moment oracle.
    pub max_n_oracle: usize,
    /// Largest number of trace factors for set-partition Möbius inversion.
    pub max_bell: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n_dfs: 7,
            max_n_groupalgebra: 9,
            max_n_oracle: 7,
            max_bell: 6,
        }
    }
}

impl Limits {
    pub const ENV_VAR: &'static str = "HWZ_MAX_N";

    /// Defaults with the `HWZ_MAX_N` override applied.
    pub fn from_env() -> Self {
        Limits::default().with_env_override()
    }

    pub fn with_env_override(mut self) -> Self {
        if let Some(n) = std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            self.max_n_dfs = n;
            self.max_n_groupalgebra = n;
            self.max_n_oracle = n;
        }
        self
    }

    pub fn check_dfs(&self, n: usize) -> Result<()> {
        check("depth-first path search", n, self.max_n_dfs)
    }

    pub fn check_group_algebra(&self, n: usize) -> Result<()> {
        check("group-algebra route", n, self.max_n_groupalgebra)
    }

    pub fn check_oracle(&self, n: usize) -> Result<()> {
        check("moment oracle", n, self.max_n_oracle)
    }

    pub fn check_bell(&self, ell: usize) -> Result<()> {
        check("set-partition Möbius inversion", ell, self.max_bell)
    }
}

fn check(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::LimitExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

use crate::error::{Error, Result};

/// Environment variable overriding the construction state budget.
pub const BUDGET_ENV: &str = "RVK_STATE_BUDGET";

pub const DEFAULT_MAX_STATES: usize = 200_000;

/// Resource limits for automaton constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl Limits {
    pub fn new(max_states: usize) -> Self {
        Limits { max_states }
    }

    /// Default limits, overridden by `RVK_STATE_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map(Limits::new)
                .map_err(|_| Error::Input(format!("{BUDGET_ENV} must be a nonnegative integer, got `{v}`"))),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub(crate) fn check(&self, states: usize, what: &str) -> Result<()> {
        if states > self.max_states {
            Err(Error::Resource {
                budget: self.max_states,
                what: what.to_string(),
            })
        } else {
            Ok(())
        }
    }
}

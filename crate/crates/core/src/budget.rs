use std::time::{Duration, Instant};

use serde::Serialize;

/// Search limits shared by the chain, lift and cover searches.
#[derive(Clone, Debug, Serialize)]
pub struct Budget {
    /// Longest contiguity chain accepted as a witness.
    pub max_steps: usize,
    /// Cap on candidate pieces examined by a cover search.
    pub max_cover: usize,
    /// Cap on maps visited by a single contiguity-class exploration or lift search.
    pub max_states: usize,
    /// Cap on the number of paths materialized in a windowed path complex.
    pub path_cap: usize,
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 8,
            max_cover: 4096,
            max_states: 2_000_000,
            path_cap: 100_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

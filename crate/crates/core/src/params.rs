use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// The pair `(n, K)`: `n` nodes, each selecting `K` distinct others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KOutParams {
    n: u32,
    #[serde(rename = "K")]
    k: u32,
}

impl KOutParams {
    /// Requires `1 <= k < n`.
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(domain(format!("K must be positive (n={n}, K={k})")));
        }
        if k >= n {
            return Err(domain(format!("K must be smaller than n (n={n}, K={k})")));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Region where the closed-form lower bounds are proven: `K >= 2` and `n >= 4(K+2)`.
    pub fn lower_bound_valid(&self) -> bool {
        lower_bound_valid(self.n as u64, self.k as u64)
    }

    /// `K >= 2` and `e(K+2) < n`.
    pub fn one_law_region(&self) -> bool {
        self.k >= 2 && std::f64::consts::E * (self.k as f64 + 2.0) < self.n as f64
    }
}

pub(crate) fn lower_bound_valid(n: u64, k: u64) -> bool {
    k >= 2 && n >= 4 * (k + 2)
}

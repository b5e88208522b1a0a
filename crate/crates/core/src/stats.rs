//! Interval estimates for binomial proportions.

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.high - self.low)
    }
}

/// Smallest `p` with `I_p(a, b) >= target` by bisection; `I_p` is increasing in `p`.
fn beta_quantile(a: f64, b: f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact (Clopper-Pearson) two-sided interval for a proportion after
/// `successes` out of `trials`.
pub fn clopper_pearson(successes: u64, trials: u64, confidence: f64) -> Result<Interval> {
    if trials == 0 || successes > trials {
        return Err(domain(format!(
            "need 0 <= successes <= trials, trials > 0 (got {successes}/{trials})"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(domain(format!("confidence must lie in (0, 1), got {confidence}")));
    }
    let alpha = 1.0 - confidence;
    let (x, n) = (successes as f64, trials as f64);
    let low = if successes == 0 {
        0.0
    } else if successes == trials {
        (alpha / 2.0).powf(1.0 / n)
    } else {
        beta_quantile(x, n - x + 1.0, alpha / 2.0)
    };
    let high = if successes == trials {
        1.0
    } else if successes == 0 {
        1.0 - (alpha / 2.0).powf(1.0 / n)
    } else {
        beta_quantile(x + 1.0, n - x, 1.0 - alpha / 2.0)
    };
    Ok(Interval { low, high })
}

/// One-sided 95% upper bound `3 / trials` on an event never observed in `trials` trials.
pub fn rule_of_three(trials: u64) -> f64 {
    3.0 / trials as f64
}

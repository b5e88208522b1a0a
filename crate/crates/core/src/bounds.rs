//! Closed-form bounds on the connectivity probability `P(n; K)`.
//!
//! Lower bounds share the polynomial factor `Q(n; K)` and differ only in the
//! multiplicative constant: `c(n; K)` (Stirling-sharpened), `a(K)` (the
//! exponential constant behind `ym`) and `b(n; K)` (the `12n/(12n-1)` form
//! behind `ff`). The upper bound comes from
//! a two-term Bonferroni lower bound on the probability that some `(K+1)`-set
//! is an isolated component. All binomial products are evaluated in log space.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{ln_add_exp, ln_choose, ln_choose_ratio, ln_factorial, ln_pow, ln_sub_exp};
use crate::params::lower_bound_valid;

fn require_k_at_least_two(k: u64) -> Result<()> {
    if k < 2 {
        return Err(domain(format!("requires K >= 2, got K={k}")));
    }
    Ok(())
}

fn require_n_above(n: u64, k: u64, min_exclusive: u64, what: &str) -> Result<()> {
    if n <= min_exclusive {
        return Err(domain(format!(
            "{what} requires n > {min_exclusive} (n={n}, K={k})"
        )));
    }
    Ok(())
}

/// `ln Q(n; K)`.
pub fn ln_q_factor(n: u64, k: u64) -> Result<f64> {
    require_k_at_least_two(k)?;
    require_n_above(n, k, k + 2, "Q(n;K)")?;
    let nf = n as f64;
    let kf = k as f64;
    let first = (kf * kf - 1.0) * ((kf + 1.0) / nf).ln();
    let second = (nf / 2.0).ln() + ((k + 2) * (k - 1)) as f64 * ((kf + 2.0) / nf).ln();
    Ok(ln_add_exp(first, second))
}

/// `Q(n; K) = ((K+1)/n)^(K²-1) + (n/2)((K+2)/n)^((K+2)(K-1))`; needs `K >= 2`, `n > K+2`.
pub fn q_factor(n: u64, k: u64) -> Result<f64> {
    ln_q_factor(n, k).map(f64::exp)
}

/// `sqrt(n / (2π(K+1)(n-K-1)))`, common to `c` and `b`.
fn stirling_tail(n: u64, k: u64) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    (1.0 / (2.0 * PI * (kf + 1.0))).sqrt() * (nf / (nf - kf - 1.0)).sqrt()
}

/// `c(n; K) = e^{-(K²-1)(1-(K+1)/n)} / sqrt(2π(K+1)) · sqrt(n/(n-K-1))`; needs `n > K+1`.
pub fn c_factor(n: u64, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(domain("c(n;K) requires K >= 1"));
    }
    require_n_above(n, k, k + 1, "c(n;K)")?;
    let kf = k as f64;
    let exponent = -(kf * kf - 1.0) * (1.0 - (kf + 1.0) / n as f64);
    Ok(exponent.exp() * stirling_tail(n, k))
}

/// `a(K) = e^{-(K+1)(K-2)/2}`; needs `K >= 2`.
pub fn a_factor(k: u64) -> Result<f64> {
    require_k_at_least_two(k)?;
    let kf = k as f64;
    Ok((-0.5 * (kf + 1.0) * (kf - 2.0)).exp())
}

/// `b(n; K) = 12n/(12n-1) · sqrt(1/(2π(K+1))) · sqrt(n/(n-K-1))`; needs `n > K+1`.
pub fn b_factor(n: u64, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(domain("b(n;K) requires K >= 1"));
    }
    require_n_above(n, k, k + 1, "b(n;K)")?;
    let nf = n as f64;
    Ok(12.0 * nf / (12.0 * nf - 1.0) * stirling_tail(n, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LowerBoundKind {
    /// `1 - c(n;K) Q(n;K)`, valid for `n >= 4(K+2)`.
    This,
    /// `1 - a(K) Q(n;K)`, valid for `n >= 4(K+2)`.
    Ym,
    /// `1 - b(n;K) Q(n;K)`, valid for all `K < n`.
    Ff,
}

impl LowerBoundKind {
    pub const ALL: [LowerBoundKind; 3] = [Self::This, Self::Ym, Self::Ff];

    pub fn label(&self) -> &'static str {
        match self {
            Self::This => "this",
            Self::Ym => "ym",
            Self::Ff => "ff",
        }
    }
}

/// One evaluated lower bound `1 - factor · Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub kind: LowerBoundKind,
    pub factor: f64,
    pub q: f64,
    /// `factor · Q`, the bound on the disconnection probability.
    pub gap: f64,
    /// `1 - gap` clamped into `[0, 1]`.
    pub probability: f64,
    pub clamped: bool,
    /// Whether `(n, K)` lies in the region where this bound is proven.
    pub valid: bool,
    /// `floor(1 / gap)`, the predicted mean number of realizations per
    /// disconnected one; `None` if it does not fit in a `u64`.
    pub mean_trials: Option<u64>,
}

pub(crate) fn floor_reciprocal(gap: f64) -> Option<u64> {
    let r = (1.0 / gap).floor();
    (r.is_finite() && r < u64::MAX as f64).then_some(r as u64)
}

pub fn lower_bound(n: u64, k: u64, kind: LowerBoundKind) -> Result<LowerBound> {
    let q = q_factor(n, k)?;
    let (factor, valid) = match kind {
        LowerBoundKind::This => (c_factor(n, k)?, lower_bound_valid(n, k)),
        LowerBoundKind::Ym => (a_factor(k)?, lower_bound_valid(n, k)),
        LowerBoundKind::Ff => (b_factor(n, k)?, k < n),
    };
    let gap = factor * q;
    let raw = 1.0 - gap;
    Ok(LowerBound {
        kind,
        factor,
        q,
        gap,
        probability: raw.clamp(0.0, 1.0),
        clamped: raw < 0.0,
        valid,
        mean_trials: floor_reciprocal(gap),
    })
}

fn check_isolated_set_args(n: u64, k: u64, r: u64) -> Result<()> {
    if k == 0 || k >= n {
        return Err(domain(format!("requires 1 <= K < n (n={n}, K={k})")));
    }
    if r == 0 || r > n {
        return Err(domain(format!("set size must be in 1..=n (n={n}, r={r})")));
    }
    Ok(())
}

/// `ln` of the probability that the fixed set `{1..r}` has no edge to its complement.
pub fn ln_prob_isolated_set(n: u64, k: u64, r: u64) -> Result<f64> {
    check_isolated_set_args(n, k, r)?;
    let (n, k, r) = (n as i64, k as i64, r as i64);
    let inside = ln_pow(ln_choose_ratio(r - 1, n - 1, k), r);
    let outside = if r == n {
        0.0
    } else {
        ln_pow(ln_choose_ratio(n - r - 1, n - 1, k), n - r)
    };
    Ok(inside + outside)
}

/// `(C(r-1,K)/C(n-1,K))^r · (C(n-r-1,K)/C(n-1,K))^(n-r)`.
pub fn prob_isolated_set(n: u64, k: u64, r: u64) -> Result<f64> {
    ln_prob_isolated_set(n, k, r).map(f64::exp)
}

fn require_two_blocks(n: u64, k: u64) -> Result<()> {
    require_k_at_least_two(k)?;
    if n < 2 * (k + 1) {
        return Err(domain(format!("requires n >= 2(K+1) (n={n}, K={k})")));
    }
    Ok(())
}

/// `ln` of the union bound `sum_{r=K+1}^{floor(n/2)} C(n,r) P[{1..r} isolated]`.
pub fn ln_union_bound_disconnect(n: u64, k: u64) -> Result<f64> {
    require_two_blocks(n, k)?;
    let mut acc = f64::NEG_INFINITY;
    for r in (k + 1)..=(n / 2) {
        let term = ln_choose(n as i64, r as i64) + ln_prob_isolated_set(n, k, r)?;
        acc = ln_add_exp(acc, term);
    }
    Ok(acc)
}

/// Union bound on `1 - P(n;K)` summed exactly over isolated-set sizes.
pub fn union_bound_disconnect(n: u64, k: u64) -> Result<f64> {
    ln_union_bound_disconnect(n, k).map(f64::exp)
}

/// How the Bonferroni pair sum counts pairs of disjoint `(K+1)`-sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// `C(n,K+1) · C(n-K-1,K+1)`: every ordered pair.
    #[default]
    Paper,
    /// Half of the above: each unordered pair once.
    UnorderedHalf,
}

impl PairMode {
    fn ln_multiplier(&self) -> f64 {
        match self {
            PairMode::Paper => 0.0,
            PairMode::UnorderedHalf => -std::f64::consts::LN_2,
        }
    }
}

/// Relative rounding budget of a log-space sum of a few dozen terms.
const LN_RESOLUTION: f64 = 256.0 * f64::EPSILON;

/// The single sum `S1` and pair sum `S2`, kept as logs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BonferroniTerms {
    pub ln_s1: f64,
    pub ln_s2: f64,
}

impl BonferroniTerms {
    pub fn s1(&self) -> f64 {
        self.ln_s1.exp()
    }

    pub fn s2(&self) -> f64 {
        self.ln_s2.exp()
    }

    /// `ln(S1 - S2)` when `S1` exceeds `S2` by more than log-space rounding.
    pub fn ln_gap(&self) -> Option<f64> {
        let resolution = LN_RESOLUTION * self.ln_s1.abs().max(1.0);
        (self.ln_s1 - self.ln_s2 > resolution).then(|| ln_sub_exp(self.ln_s1, self.ln_s2))
    }
}

pub fn bonferroni_terms(n: u64, k: u64, mode: PairMode) -> Result<BonferroniTerms> {
    require_two_blocks(n, k)?;
    let (n, k) = (n as i64, k as i64);
    let ln_pick = ln_choose(n - 1, k);
    let ln_s1 = ln_choose(n, k + 1) - (k + 1) as f64 * ln_pick
        + ln_pow(ln_choose_ratio(n - k - 2, n - 1, k), n - k - 1);
    let ln_s2 = mode.ln_multiplier() + ln_choose(n, k + 1) + ln_choose(n - k - 1, k + 1)
        - (2 * (k + 1)) as f64 * ln_pick
        + ln_pow(ln_choose_ratio(n - 2 * k - 3, n - 1, k), n - 2 * (k + 1));
    Ok(BonferroniTerms { ln_s1, ln_s2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum UpperBound {
    /// `P(n;K) <= 1 - gap` with `gap = S1 - S2 > 0`.
    Bound {
        probability: f64,
        gap: f64,
        ln_gap: f64,
    },
    /// `S1 <= S2`: the inequality says nothing.
    Vacuous,
}

impl UpperBound {
    pub fn probability(&self) -> Option<f64> {
        match self {
            UpperBound::Bound { probability, .. } => Some(*probability),
            UpperBound::Vacuous => None,
        }
    }

    pub fn gap(&self) -> Option<f64> {
        match self {
            UpperBound::Bound { gap, .. } => Some(*gap),
            UpperBound::Vacuous => None,
        }
    }

    pub fn is_vacuous(&self) -> bool {
        matches!(self, UpperBound::Vacuous)
    }
}

/// `1 - (S1 - S2)` over isolated `(K+1)`-components; needs `K >= 2`, `n >= 2(K+1)`.
pub fn upper_bound_bonferroni(n: u64, k: u64, mode: PairMode) -> Result<UpperBound> {
    let terms = bonferroni_terms(n, k, mode)?;
    Ok(match terms.ln_gap() {
        Some(ln_gap) => {
            let gap = ln_gap.exp();
            UpperBound::Bound {
                probability: 1.0 - gap,
                gap,
                ln_gap,
            }
        }
        None => UpperBound::Vacuous,
    })
}

/// `(K!)^K e^{-K(K+1)} / (K+1)`: the limit of `n^{K²-1}(1 - upper bound)`.
pub fn asymptotic_upper_constant(k: u64) -> Result<f64> {
    require_k_at_least_two(k)?;
    let kf = k as f64;
    Ok((kf * ln_factorial(k) - kf * (kf + 1.0) - (kf + 1.0).ln()).exp())
}

/// The raw quantities behind a [`BoundReport`]; `None` outside a factor's domain.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BoundInputsLedger {
    pub q: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub pair_mode: PairMode,
    pub inputs: BoundInputsLedger,
    pub lower_this: Option<LowerBound>,
    pub lower_ym: Option<LowerBound>,
    pub lower_ff: Option<LowerBound>,
    /// `None` when `(n, K)` is outside the Bonferroni domain.
    pub upper_bonferroni: Option<UpperBound>,
    pub union_bound: Option<f64>,
}

impl BoundReport {
    pub fn lower(&self, kind: LowerBoundKind) -> Option<&LowerBound> {
        match kind {
            LowerBoundKind::This => self.lower_this.as_ref(),
            LowerBoundKind::Ym => self.lower_ym.as_ref(),
            LowerBoundKind::Ff => self.lower_ff.as_ref(),
        }
    }
}

/// Evaluates every bound at `(n, K)`. Only `K = 0` or `K >= n` is an error;
/// pieces outside their own domain come back as `None`.
pub fn bound_report(n: u64, k: u64, mode: PairMode) -> Result<BoundReport> {
    if k == 0 || k >= n {
        return Err(domain(format!("requires 1 <= K < n (n={n}, K={k})")));
    }
    let terms = bonferroni_terms(n, k, mode).ok();
    Ok(BoundReport {
        n,
        k,
        pair_mode: mode,
        inputs: BoundInputsLedger {
            q: q_factor(n, k).ok(),
            c: c_factor(n, k).ok(),
            a: a_factor(k).ok(),
            b: b_factor(n, k).ok(),
            s1: terms.map(|t| t.s1()),
            s2: terms.map(|t| t.s2()),
        },
        lower_this: lower_bound(n, k, LowerBoundKind::This).ok(),
        lower_ym: lower_bound(n, k, LowerBoundKind::Ym).ok(),
        lower_ff: lower_bound(n, k, LowerBoundKind::Ff).ok(),
        upper_bonferroni: upper_bound_bonferroni(n, k, mode).ok(),
        union_bound: union_bound_disconnect(n, k).ok(),
    })
}

//! Seeded, parallel Monte Carlo estimation of `P(n; K)`.
//!
//! Trial `t` always draws its profile from `Seed { master, stream_index: t }`
//! and workers only return integer partial counts that are merged by
//! addition, so an estimate depends on `(params, trials, master)` alone and
//! never on the worker count or scheduling. The default worker count is the
//! number of physical cores.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{census_profile, is_connected_profile};
use crate::error::{domain, Result};
use crate::params::KOutParams;
use crate::profile::{ProfileSampler, SelectionProfile};
use crate::seed::{master_rng, Seed};
use crate::stats::{clopper_pearson, rule_of_three, Interval};
use crate::unionfind::DisjointSets;

pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Trials per work unit handed to a worker.
const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub params: KOutParams,
    pub trials: u64,
    pub master_seed: u64,
    /// `None` uses one worker per physical core.
    pub workers: Option<usize>,
    pub confidence: f64,
}

impl TrialPlan {
    pub fn new(params: KOutParams, trials: u64, master_seed: u64) -> Self {
        Self {
            params,
            trials,
            master_seed,
            workers: None,
            confidence: DEFAULT_CONFIDENCE,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn with_confidence(mut self, confidence: f64) -> Self {
        self.confidence = confidence;
        self
    }
}

pub fn default_workers() -> usize {
    num_cpus::get_physical().max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityEstimate {
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub trials: u64,
    pub master_seed: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub disconnected_count: u64,
    /// Component sizes pooled over the disconnected realizations only.
    pub size_histogram: BTreeMap<usize, u64>,
    /// Sum of isolated `(K+1)`-component counts over all trials.
    pub z_total: u64,
}

impl ConnectivityEstimate {
    pub fn interval(&self) -> Interval {
        Interval {
            low: self.ci_low,
            high: self.ci_high,
        }
    }

    pub fn disconnect_rate(&self) -> f64 {
        self.disconnected_count as f64 / self.trials as f64
    }

    /// Empirical mean number of isolated `(K+1)`-components per realization.
    pub fn z_mean(&self) -> f64 {
        self.z_total as f64 / self.trials as f64
    }
}

#[derive(Debug, Default, Clone, PartialEq)]
struct Partial {
    disconnected: u64,
    z_total: u64,
    histogram: BTreeMap<usize, u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.disconnected += other.disconnected;
        self.z_total += other.z_total;
        for (size, count) in other.histogram {
            *self.histogram.entry(size).or_insert(0) += count;
        }
        self
    }
}

fn run_block(params: KOutParams, master: u64, range: std::ops::Range<u64>) -> Partial {
    let mut sampler = ProfileSampler::new();
    let mut scratch = DisjointSets::default();
    let mut profile: Option<SelectionProfile> = None;
    let mut partial = Partial::default();
    let base = master_rng(master);
    for t in range {
        let profile = match profile.as_mut() {
            Some(p) => {
                let mut rng = base.clone();
                rng.set_stream(t);
                sampler.sample_into_with(params, &mut rng, p);
                p
            }
            None => profile.insert(sampler.sample(params, Seed::new(master, t))),
        };
        // Connected realizations carry no isolated component, so only the
        // disconnected ones need the full census.
        if is_connected_profile(profile, &mut scratch) {
            continue;
        }
        let census = census_profile(profile, &mut scratch);
        partial.z_total += census.z_count;
        partial.disconnected += 1;
        for (size, count) in census.size_histogram {
            *partial.histogram.entry(size).or_insert(0) += count;
        }
    }
    partial
}

/// Runs `plan.trials` independent realizations and aggregates their census.
pub fn estimate(plan: &TrialPlan) -> Result<ConnectivityEstimate> {
    if plan.trials == 0 {
        return Err(domain("trial count must be at least 1"));
    }
    let workers = plan.workers.unwrap_or_else(default_workers).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| domain(format!("cannot start {workers} workers: {e}")))?;
    let blocks = plan.trials.div_ceil(BLOCK);
    let params = plan.params;
    let master = plan.master_seed;
    let trials = plan.trials;
    let total = pool.install(|| {
        (0..blocks)
            .into_par_iter()
            .map(|b| run_block(params, master, b * BLOCK..((b + 1) * BLOCK).min(trials)))
            .reduce(Partial::default, Partial::merge)
    });
    let connected = plan.trials - total.disconnected;
    let ci = clopper_pearson(connected, plan.trials, plan.confidence)?;
    Ok(ConnectivityEstimate {
        n: params.n(),
        k: params.k(),
        trials: plan.trials,
        master_seed: plan.master_seed,
        p_hat: connected as f64 / plan.trials as f64,
        ci_low: ci.low,
        ci_high: ci.high,
        confidence: plan.confidence,
        disconnected_count: total.disconnected,
        size_histogram: total.histogram,
        z_total: total.z_total,
    })
}

/// Mean number of realizations per disconnected one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeanTrials {
    /// `trials / disconnected` with the interval implied by the
    /// Clopper-Pearson interval on the disconnection rate.
    Estimate {
        value: f64,
        ci_low: f64,
        ci_high: f64,
    },
    /// No disconnection observed: by the rule of three the rate is below
    /// `3 / trials` at 95%, so the mean is at least `trials / 3`.
    RuleOfThreeLowerBound { at_least: f64, confidence: f64 },
}

pub fn mean_trials_to_disconnect_empirical(est: &ConnectivityEstimate) -> Result<MeanTrials> {
    if est.disconnected_count == 0 {
        return Ok(MeanTrials::RuleOfThreeLowerBound {
            at_least: 1.0 / rule_of_three(est.trials),
            confidence: 0.95,
        });
    }
    let rate = clopper_pearson(est.disconnected_count, est.trials, est.confidence)?;
    Ok(MeanTrials::Estimate {
        value: est.trials as f64 / est.disconnected_count as f64,
        ci_low: 1.0 / rate.high,
        ci_high: 1.0 / rate.low,
    })
}

//! Batch drivers: the mean-trials table at `K = 2`, bound/simulation sweeps
//! over `n`, and small-`n` comparisons of enumeration, bounds and simulation.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, BoundReport, LowerBound, LowerBoundKind, PairMode, UpperBound};
use crate::error::{domain, Result};
use crate::montecarlo::{
    estimate, mean_trials_to_disconnect_empirical, ConnectivityEstimate, MeanTrials, TrialPlan,
    DEFAULT_CONFIDENCE,
};
use crate::oracle::{exact_connectivity, ExactResult};
use crate::params::KOutParams;

pub const TABLE1_NODES: [u64; 4] = [16, 20, 25, 35];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalColumn {
    pub trials: u64,
    pub disconnected: u64,
    pub mean_trials: MeanTrials,
}

/// Predicted mean number of realizations per disconnected one, per lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub this: Option<u64>,
    pub ym: Option<u64>,
    pub ff: Option<u64>,
    pub empirical: Option<EmpiricalColumn>,
}

/// Mean-trials table for `K = 2`, `n` in 16, 20, 25, 35. With
/// `trials_per_point > 0` each row also gets a simulated column.
pub fn run_table1(trials_per_point: u64, seed: u64, workers: Option<usize>) -> Result<Vec<Table1Row>> {
    TABLE1_NODES
        .iter()
        .map(|&n| {
            let k = 2;
            let mean = |kind| crate::bounds::lower_bound(n, k, kind).map(|lb| lb.mean_trials);
            let empirical = if trials_per_point > 0 {
                let mut plan = TrialPlan::new(KOutParams::new(n as u32, k as u32)?, trials_per_point, seed);
                plan.workers = workers;
                let est = estimate(&plan)?;
                Some(EmpiricalColumn {
                    trials: est.trials,
                    disconnected: est.disconnected_count,
                    mean_trials: mean_trials_to_disconnect_empirical(&est)?,
                })
            } else {
                None
            };
            Ok(Table1Row {
                n,
                k,
                this: mean(LowerBoundKind::This)?,
                ym: mean(LowerBoundKind::Ym)?,
                ff: mean(LowerBoundKind::Ff)?,
                empirical,
            })
        })
        .collect()
}

/// Which bound columns a sweep fills in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSelection {
    pub this: bool,
    pub ym: bool,
    pub ff: bool,
    pub upper: bool,
}

impl Default for BoundSelection {
    fn default() -> Self {
        Self {
            this: true,
            ym: true,
            ff: true,
            upper: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub ks: Vec<u32>,
    pub n_start: u32,
    /// Inclusive.
    pub n_stop: u32,
    pub n_step: u32,
    /// Simulated trials per point; 0 evaluates bounds only.
    pub trials: u64,
    pub master_seed: u64,
    pub bounds: BoundSelection,
    pub pair_mode: PairMode,
    pub workers: Option<usize>,
    pub confidence: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            ks: vec![2],
            n_start: 16,
            n_stop: 100,
            n_step: 4,
            trials: 0,
            master_seed: 0,
            bounds: BoundSelection::default(),
            pair_mode: PairMode::Paper,
            workers: None,
            confidence: DEFAULT_CONFIDENCE,
        }
    }
}

/// State of the upper-bound column of a sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperStatus {
    Bound,
    Vacuous,
    OutOfDomain,
    Excluded,
}

/// One `(n, K)` point. Columns that do not apply are empty, never dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub params_valid: bool,
    pub trials: u64,
    pub seed: u64,
    pub p_hat: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub disconnected: Option<u64>,
    pub lower_this: Option<f64>,
    pub lower_this_valid: Option<bool>,
    pub lower_ym: Option<f64>,
    pub lower_ym_valid: Option<bool>,
    pub lower_ff: Option<f64>,
    pub lower_ff_valid: Option<bool>,
    pub upper_bonferroni: Option<f64>,
    pub upper_gap: Option<f64>,
    pub upper_status: UpperStatus,
}

impl SweepRow {
    fn empty(n: u32, k: u32, spec: &SweepSpec) -> Self {
        Self {
            n,
            k,
            params_valid: false,
            trials: spec.trials,
            seed: spec.master_seed,
            p_hat: None,
            ci_low: None,
            ci_high: None,
            disconnected: None,
            lower_this: None,
            lower_this_valid: None,
            lower_ym: None,
            lower_ym_valid: None,
            lower_ff: None,
            lower_ff_valid: None,
            upper_bonferroni: None,
            upper_gap: None,
            upper_status: if spec.bounds.upper {
                UpperStatus::OutOfDomain
            } else {
                UpperStatus::Excluded
            },
        }
    }
}

fn lower_columns(lb: Option<&LowerBound>, include: bool) -> (Option<f64>, Option<bool>) {
    match (include, lb) {
        (true, Some(lb)) => (Some(lb.probability), Some(lb.valid)),
        _ => (None, None),
    }
}

fn sweep_point(n: u32, k: u32, spec: &SweepSpec) -> Result<SweepRow> {
    let mut row = SweepRow::empty(n, k, spec);
    let Ok(params) = KOutParams::new(n, k) else {
        return Ok(row);
    };
    row.params_valid = true;
    let report = bound_report(n as u64, k as u64, spec.pair_mode)?;
    (row.lower_this, row.lower_this_valid) = lower_columns(report.lower_this.as_ref(), spec.bounds.this);
    (row.lower_ym, row.lower_ym_valid) = lower_columns(report.lower_ym.as_ref(), spec.bounds.ym);
    (row.lower_ff, row.lower_ff_valid) = lower_columns(report.lower_ff.as_ref(), spec.bounds.ff);
    if spec.bounds.upper {
        row.upper_status = match report.upper_bonferroni {
            Some(UpperBound::Bound { probability, gap, .. }) => {
                row.upper_bonferroni = Some(probability);
                row.upper_gap = Some(gap);
                UpperStatus::Bound
            }
            Some(UpperBound::Vacuous) => UpperStatus::Vacuous,
            None => UpperStatus::OutOfDomain,
        };
    }
    if spec.trials > 0 {
        let mut plan = TrialPlan::new(params, spec.trials, spec.master_seed)
            .with_confidence(spec.confidence);
        plan.workers = spec.workers;
        let est = estimate(&plan)?;
        row.p_hat = Some(est.p_hat);
        row.ci_low = Some(est.ci_low);
        row.ci_high = Some(est.ci_high);
        row.disconnected = Some(est.disconnected_count);
    }
    Ok(row)
}

/// Evaluates every `(n, K)` point of the spec, `K` outermost.
pub fn run_figure_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.n_step == 0 {
        return Err(domain("sweep step must be positive"));
    }
    let mut rows = Vec::new();
    for &k in &spec.ks {
        for n in (spec.n_start..=spec.n_stop).step_by(spec.n_step as usize) {
            rows.push(sweep_point(n, k, spec)?);
        }
    }
    Ok(rows)
}

/// Enumeration, closed forms and simulation side by side at one small `(n, K)`.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub exact: ExactResult,
    pub bounds: BoundReport,
    pub estimate: ConnectivityEstimate,
    /// Exact disconnection probability does not exceed the union bound.
    pub union_bound_holds: Option<bool>,
    /// Exact `P(n;K)` does not exceed the Bonferroni upper bound.
    pub upper_bound_holds: Option<bool>,
    /// Clopper-Pearson interval of the simulation contains the exact value.
    pub estimate_covers_exact: bool,
}

pub fn compare(
    n: u32,
    k: u32,
    trials: u64,
    seed: u64,
    budget: u64,
    mode: PairMode,
    workers: Option<usize>,
) -> Result<Comparison> {
    let params = KOutParams::new(n, k)?;
    let exact = exact_connectivity(n, k, budget)?;
    let bounds = bound_report(n as u64, k as u64, mode)?;
    let mut plan = TrialPlan::new(params, trials, seed);
    plan.workers = workers;
    let estimate = estimate(&plan)?;
    let p = exact.p_float();
    let disconnect = exact.disconnect_probability().to_f64().unwrap_or(f64::NAN);
    let slack = 1e-12;
    Ok(Comparison {
        union_bound_holds: bounds.union_bound.map(|u| disconnect <= u * (1.0 + slack)),
        upper_bound_holds: bounds.upper_bonferroni.map(|ub| match ub {
            UpperBound::Bound { gap, .. } => disconnect >= gap * (1.0 - slack),
            UpperBound::Vacuous => true,
        }),
        estimate_covers_exact: estimate.interval().contains(p),
        exact,
        bounds,
        estimate,
    })
}

//! Flat row shapes for CSV output. JSON output serializes the library types
//! directly.

use std::io::Write;

use anyhow::Result;
use kout_core::experiments::Table1Row;
use kout_core::montecarlo::MeanTrials;
use kout_core::{BoundReport, ConnectivityEstimate, LowerBound, PairMode, UpperBound};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRow {
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub trials: u64,
    pub seed: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub disconnected: u64,
    /// Component size -> count over disconnected realizations, as JSON.
    pub histogram_json: String,
}

impl From<&ConnectivityEstimate> for SimulateRow {
    fn from(e: &ConnectivityEstimate) -> Self {
        Self {
            n: e.n,
            k: e.k,
            trials: e.trials,
            seed: e.master_seed,
            p_hat: e.p_hat,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            disconnected: e.disconnected_count,
            histogram_json: serde_json::to_string(&e.size_histogram)
                .expect("histogram serialization is infallible"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub pair_mode: PairMode,
    pub q: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub lower_this: Option<f64>,
    pub lower_this_gap: Option<f64>,
    pub lower_this_valid: Option<bool>,
    pub lower_this_clamped: Option<bool>,
    pub lower_this_mean_trials: Option<u64>,
    pub lower_ym: Option<f64>,
    pub lower_ym_gap: Option<f64>,
    pub lower_ym_valid: Option<bool>,
    pub lower_ym_clamped: Option<bool>,
    pub lower_ym_mean_trials: Option<u64>,
    pub lower_ff: Option<f64>,
    pub lower_ff_gap: Option<f64>,
    pub lower_ff_valid: Option<bool>,
    pub lower_ff_clamped: Option<bool>,
    pub lower_ff_mean_trials: Option<u64>,
    pub upper_bonferroni: Option<f64>,
    pub upper_gap: Option<f64>,
    pub upper_vacuous: Option<bool>,
    pub union_bound: Option<f64>,
}

type LowerCols = (Option<f64>, Option<f64>, Option<bool>, Option<bool>, Option<u64>);

fn lower_cols(lb: Option<&LowerBound>) -> LowerCols {
    match lb {
        Some(lb) => (
            Some(lb.probability),
            Some(lb.gap),
            Some(lb.valid),
            Some(lb.clamped),
            lb.mean_trials,
        ),
        None => (None, None, None, None, None),
    }
}

impl From<&BoundReport> for BoundsRow {
    fn from(r: &BoundReport) -> Self {
        let this = lower_cols(r.lower_this.as_ref());
        let ym = lower_cols(r.lower_ym.as_ref());
        let ff = lower_cols(r.lower_ff.as_ref());
        Self {
            n: r.n,
            k: r.k,
            pair_mode: r.pair_mode,
            q: r.inputs.q,
            c: r.inputs.c,
            a: r.inputs.a,
            b: r.inputs.b,
            s1: r.inputs.s1,
            s2: r.inputs.s2,
            lower_this: this.0,
            lower_this_gap: this.1,
            lower_this_valid: this.2,
            lower_this_clamped: this.3,
            lower_this_mean_trials: this.4,
            lower_ym: ym.0,
            lower_ym_gap: ym.1,
            lower_ym_valid: ym.2,
            lower_ym_clamped: ym.3,
            lower_ym_mean_trials: ym.4,
            lower_ff: ff.0,
            lower_ff_gap: ff.1,
            lower_ff_valid: ff.2,
            lower_ff_clamped: ff.3,
            lower_ff_mean_trials: ff.4,
            upper_bonferroni: r.upper_bonferroni.and_then(|u| u.probability()),
            upper_gap: r.upper_bonferroni.and_then(|u| u.gap()),
            upper_vacuous: r.upper_bonferroni.map(|u| matches!(u, UpperBound::Vacuous)),
            union_bound: r.union_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1CsvRow {
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub this: Option<u64>,
    pub ym: Option<u64>,
    pub ff: Option<u64>,
    pub empirical_trials: Option<u64>,
    pub empirical_disconnected: Option<u64>,
    /// `estimate` or `rule_of_three_lower_bound`.
    pub empirical_kind: Option<String>,
    /// The estimate, or the rule-of-three floor when nothing disconnected.
    pub empirical_mean_trials: Option<f64>,
    pub empirical_ci_low: Option<f64>,
    pub empirical_ci_high: Option<f64>,
}

impl From<&Table1Row> for Table1CsvRow {
    fn from(r: &Table1Row) -> Self {
        let mut row = Self {
            n: r.n,
            k: r.k,
            this: r.this,
            ym: r.ym,
            ff: r.ff,
            empirical_trials: None,
            empirical_disconnected: None,
            empirical_kind: None,
            empirical_mean_trials: None,
            empirical_ci_low: None,
            empirical_ci_high: None,
        };
        if let Some(e) = &r.empirical {
            row.empirical_trials = Some(e.trials);
            row.empirical_disconnected = Some(e.disconnected);
            match e.mean_trials {
                MeanTrials::Estimate { value, ci_low, ci_high } => {
                    row.empirical_kind = Some("estimate".into());
                    row.empirical_mean_trials = Some(value);
                    row.empirical_ci_low = Some(ci_low);
                    row.empirical_ci_high = Some(ci_high);
                }
                MeanTrials::RuleOfThreeLowerBound { at_least, .. } => {
                    row.empirical_kind = Some("rule_of_three_lower_bound".into());
                    row.empirical_mean_trials = Some(at_least);
                }
            }
        }
        row
    }
}

/// Writes `rows` with serde-derived headers, or just `empty_header` when
/// there are no rows.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], empty_header: &[&str], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(empty_header)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const SWEEP_HEADER: [&str; 18] = [
    "n",
    "K",
    "params_valid",
    "trials",
    "seed",
    "p_hat",
    "ci_low",
    "ci_high",
    "disconnected",
    "lower_this",
    "lower_this_valid",
    "lower_ym",
    "lower_ym_valid",
    "lower_ff",
    "lower_ff_valid",
    "upper_bonferroni",
    "upper_gap",
    "upper_status",
];

mod args;
mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use kout_core::experiments::{compare, run_figure_sweep, run_table1, BoundSelection, SweepSpec};
use kout_core::montecarlo::mean_trials_to_disconnect_empirical;
use kout_core::{
    bound_report, estimate, exact_connectivity, sample_profile, KOutParams, Seed, TrialPlan,
};
use serde::Serialize;

use args::{BoundArg, Cli, Command, Format};
use report::{write_csv, BoundsRow, SimulateRow, Table1CsvRow, SWEEP_HEADER};

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    let argv = config::expand_argv(std::env::args_os().collect())?;
    let cli = Cli::parse_from(argv);
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    dispatch(cli.command, &mut out)?;
    out.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    #[serde(flatten)]
    estimate: &'a kout_core::ConnectivityEstimate,
    mean_trials: kout_core::montecarlo::MeanTrials,
}

fn dump_profile(path: &Path, params: KOutParams, seed: u64) -> Result<()> {
    let profile = sample_profile(params, Seed::new(seed, 0));
    std::fs::write(path, profile.to_json() + "\n")
        .with_context(|| format!("writing {}", path.display()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Simulate(a) => {
            let params = KOutParams::new(a.n, a.k)?;
            if let Some(path) = &a.dump_graph {
                dump_profile(path, params, a.seed)?;
            }
            let mut plan = TrialPlan::new(params, a.trials, a.seed).with_confidence(a.confidence);
            plan.workers = a.parallel.workers;
            let est = estimate(&plan)?;
            match a.format {
                Format::Json => write_json(
                    &SimulateReport {
                        mean_trials: mean_trials_to_disconnect_empirical(&est)?,
                        estimate: &est,
                    },
                    out,
                ),
                Format::Csv => write_csv(&[SimulateRow::from(&est)], &[], out),
            }
        }
        Command::Bounds(a) => {
            let report = bound_report(a.n, a.k, a.pair_mode.into())?;
            match a.format {
                Format::Json => write_json(&report, out),
                Format::Csv => write_csv(&[BoundsRow::from(&report)], &[], out),
            }
        }
        Command::Oracle(a) => write_json(&exact_connectivity(a.n, a.k, a.budget)?, out),
        Command::Table1(a) => {
            let rows = run_table1(a.trials, a.seed, a.parallel.workers)?;
            match a.format {
                Format::Json => write_json(&rows, out),
                Format::Csv => {
                    let flat: Vec<Table1CsvRow> = rows.iter().map(Into::into).collect();
                    write_csv(&flat, &[], out)
                }
            }
        }
        Command::Sweep(a) => {
            let spec = SweepSpec {
                ks: a.ks,
                n_start: a.n_start,
                n_stop: a.n_stop,
                n_step: a.n_step,
                trials: a.trials,
                master_seed: a.seed,
                bounds: BoundSelection {
                    this: a.bounds.contains(&BoundArg::This),
                    ym: a.bounds.contains(&BoundArg::Ym),
                    ff: a.bounds.contains(&BoundArg::Ff),
                    upper: a.bounds.contains(&BoundArg::Upper),
                },
                pair_mode: a.pair_mode.into(),
                workers: a.parallel.workers,
                confidence: a.confidence,
            };
            let rows = run_figure_sweep(&spec)?;
            match a.format {
                Format::Json => write_json(&rows, out),
                Format::Csv => write_csv(&rows, &SWEEP_HEADER, out),
            }
        }
        Command::Compare(a) => write_json(
            &compare(
                a.n,
                a.k,
                a.trials,
                a.seed,
                a.budget,
                a.pair_mode.into(),
                a.parallel.workers,
            )?,
            out,
        ),
    }
}

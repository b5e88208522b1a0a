use std::time::Instant;

use kout_core::{estimate, KOutParams, TrialPlan};

fn main() {
    for (n, k, trials) in [(6u32, 2u32, 10_000_000u64), (16, 2, 1_000_000), (7, 2, 2_000_000)] {
        let start = Instant::now();
        let est = estimate(&TrialPlan::new(KOutParams::new(n, k).unwrap(), trials, 1)).unwrap();
        println!(
            "n={n} K={k} trials={trials}: disconnected={} p_hat={} ({:.2?}, {} workers)",
            est.disconnected_count,
            est.p_hat,
            start.elapsed(),
            kout_core::montecarlo::default_workers()
        );
    }
}

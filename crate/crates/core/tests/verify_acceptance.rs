//! Acceptance checks: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p kout-core --test verify_acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{binom, isolated_set, s1};
use kout_core::bounds::PairMode;
use kout_core::oracle::DEFAULT_BUDGET;
use kout_core::{
    a_factor, asymptotic_upper_constant, b_factor, build_graph, c_factor, census, components,
    estimate, exact_connectivity, exact_isolated_set_probability, lower_bound, prob_isolated_set,
    q_factor, sample_profile, upper_bound_bonferroni, KOutParams, LowerBoundKind, Seed,
    SelectionProfile, TrialPlan,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Floor-rounding slack on the mean-trials table.
const TABLE_TOLERANCE: i64 = 1;
/// Poisson band for the Monte Carlo vs enumeration check, in standard deviations.
const POISSON_SIGMAS: f64 = 4.0;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(120);
const EMPIRICAL_WINDOW: (f64, f64) = (0.9988, 0.9996);
const LOWER_BOUND_N16: f64 = 0.999155;
const ASYMPTOTIC_TOL_K2: f64 = 0.10;
const ASYMPTOTIC_TOL_K3: f64 = 0.25;
const STRUCTURE_GRAPHS_PER_K: u64 = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn log_grid(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut v: Vec<u64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as u64)
        .chain([lo, lo + 1, hi])
        .filter(|&n| (lo..=hi).contains(&n))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn table1_regression() -> Outcome {
    let expected = [
        (16u64, [1183i64, 26, 102]),
        (20, [2645, 51, 205]),
        (25, [5753, 100, 409]),
        (35, [17834, 276, 1145]),
    ];
    let q = |n| q_factor(n, 2).unwrap();
    let mut worst = 0;
    let mut rows = Vec::new();
    for (n, want) in expected {
        let got = [
            (1.0 / (c_factor(n, 2).unwrap() * q(n))).floor() as i64,
            (1.0 / (a_factor(2).unwrap() * q(n))).floor() as i64,
            (1.0 / (b_factor(n, 2).unwrap() * q(n))).floor() as i64,
        ];
        for (g, w) in got.iter().zip(want) {
            worst = worst.max((g - w).abs());
        }
        rows.push(format!("n={n}:{got:?}"));
    }
    outcome(worst <= TABLE_TOLERANCE, format!("{} max|Δ|={worst}", rows.join(" ")))
}

fn exact_oracle() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let six = pool.install(|| exact_connectivity(6, 2, DEFAULT_BUDGET)).unwrap();
    let elapsed = start.elapsed();
    let p = |n, k| exact_connectivity(n, k, DEFAULT_BUDGET).unwrap().p_exact;
    let checks = [
        six.p_exact == BigRational::one() - ratio(1, 100_000),
        six.total_profiles == 1_000_000,
        p(4, 2).is_one(),
        p(5, 2).is_one(),
        p(4, 1) == ratio(26, 27),
        elapsed <= ORACLE_TIME_LIMIT,
    ];
    outcome(
        checks.iter().all(|&c| c),
        format!(
            "P(6;2)={} P(4;1)={} single-thread {:.2?}",
            six.p_exact,
            p(4, 1),
            elapsed
        ),
    )
}

fn oracle_matches_closed_form() -> Outcome {
    let counted = exact_isolated_set_probability(6, 2, 3, DEFAULT_BUDGET).unwrap();
    let closed = isolated_set(6, 2, 3);
    let float = prob_isolated_set(6, 2, 3).unwrap();
    let z = exact_connectivity(6, 2, DEFAULT_BUDGET).unwrap().z_expectation;
    let single_sum = s1(6, 2);
    let pass = counted == ratio(1, 1_000_000)
        && closed == counted
        && ((float - 1e-6) / 1e-6).abs() < 1e-14
        && z == ratio(2, 100_000)
        && z == single_sum
        && binom(6, 3) == 20u32.into();
    outcome(
        pass,
        format!("isolated {{1,2,3}}: enum={counted} closed={closed} float={float:e}; E[Z_6]={z} S1={single_sum}"),
    )
}

fn monte_carlo_vs_oracle() -> Outcome {
    let plan = TrialPlan::new(KOutParams::new(6, 2).unwrap(), 10_000_000, 0x62);
    let est = estimate(&plan).unwrap();
    let expected = 100.0_f64;
    let band = POISSON_SIGMAS * expected.sqrt();
    let diff = est.disconnected_count as f64 - expected;
    outcome(
        diff.abs() <= band,
        format!(
            "disconnected={} expected=100 band=±{band}",
            est.disconnected_count
        ),
    )
}

fn empirical_point_n16() -> Outcome {
    let plan = TrialPlan::new(KOutParams::new(16, 2).unwrap(), 1_000_000, 0x162);
    let est = estimate(&plan).unwrap();
    let half = est.interval().half_width();
    let in_window = (EMPIRICAL_WINDOW.0..=EMPIRICAL_WINDOW.1).contains(&est.p_hat);
    let above_bound = est.p_hat >= LOWER_BOUND_N16 - half;
    outcome(
        in_window && above_bound,
        format!(
            "p_hat={} (disconnected {}/{}) window {:?}: {} ; p_hat >= {LOWER_BOUND_N16} - {half:.2e}: {}",
            est.p_hat, est.disconnected_count, est.trials, EMPIRICAL_WINDOW, in_window, above_bound
        ),
    )
}

fn tightness_ordering() -> Outcome {
    let mut points = 0;
    let mut violations = Vec::new();
    for k in 2..=6u64 {
        for n in log_grid(4 * (k + 2), 10_000, 60) {
            points += 1;
            let c = c_factor(n, k).unwrap();
            if c > a_factor(k).unwrap().min(b_factor(n, k).unwrap()) {
                violations.push((n, k));
            }
        }
    }
    let ff_over_ym: Vec<u64> = log_grid(16, 10_000, 60)
        .into_iter()
        .filter(|&n| b_factor(n, 2).unwrap() > a_factor(2).unwrap())
        .collect();
    outcome(
        violations.is_empty() && ff_over_ym.is_empty(),
        format!(
            "{points} grid points, c>min(a,b) at {violations:?}, b(n;2)>a(2) at {ff_over_ym:?}"
        ),
    )
}

fn asymptotic_constants() -> Outcome {
    let n2 = 10_000u64;
    let g2 = upper_bound_bonferroni(n2, 2, PairMode::Paper).unwrap();
    let scaled2 = g2.gap().unwrap_or(0.0) * (n2 as f64).powi(3);
    let want2 = 4.0 * (-6.0f64).exp() / 3.0;
    let err2 = (scaled2 / want2 - 1.0).abs();
    let g3 = upper_bound_bonferroni(n2, 3, PairMode::Paper).unwrap();
    let scaled3 = g3.gap().unwrap_or(0.0) * (n2 as f64).powi(8);
    let want3 = 54.0 * (-12.0f64).exp();
    let err3 = (scaled3 / want3 - 1.0).abs();
    let constants_agree = (asymptotic_upper_constant(2).unwrap() / want2 - 1.0).abs() < 1e-14
        && (asymptotic_upper_constant(3).unwrap() / want3 - 1.0).abs() < 1e-14;
    outcome(
        err2 <= ASYMPTOTIC_TOL_K2 && err3 <= ASYMPTOTIC_TOL_K3 && constants_agree,
        format!(
            "K=2: n³·gap={scaled2:.7} vs {want2:.7} (rel {err2:.2e}); K=3: n⁸·gap={scaled3:.4e} vs {want3:.4e} (rel {err3:.2e})"
        ),
    )
}

/// Two components under a random labelling: a (K+1)-clique and a cyclic
/// K-out block on the remaining nodes.
fn two_block_profile(n: u32, k: u32, seed: u64) -> SelectionProfile {
    let mut labels: Vec<u32> = (0..n).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (clique, rest) = labels.split_at(k as usize + 1);
    let mut sets = vec![Vec::new(); n as usize];
    for &v in clique {
        sets[v as usize] = clique.iter().copied().filter(|&u| u != v).collect();
    }
    for (i, &v) in rest.iter().enumerate() {
        sets[v as usize] = (1..=k as usize).map(|d| rest[(i + d) % rest.len()]).collect();
    }
    SelectionProfile::from_choices(KOutParams::new(n, k).unwrap(), &sets).unwrap()
}

fn structural_invariants() -> Outcome {
    let mut failures = Vec::new();
    let mut minimal_components = 0u64;
    for k in 2..=4u32 {
        for t in 0..STRUCTURE_GRAPHS_PER_K {
            let seed = Seed::new(0xAC_CE97 + k as u64, t);
            let (n, profile) = if t % 2 == 0 {
                let n = k + 2 + (t % 15) as u32;
                let params = KOutParams::new(n, k).unwrap();
                let profile = sample_profile(params, seed);
                if profile != sample_profile(params, seed) {
                    failures.push(format!("nondeterministic n={n} K={k} t={t}"));
                }
                (n, profile)
            } else {
                let n = 2 * k + 2 + (t % 15) as u32;
                (n, two_block_profile(n, k, t))
            };
            let g = build_graph(&profile);
            if g.min_degree() < k as usize {
                failures.push(format!("min degree n={n} K={k} t={t}"));
            }
            let part = components(&g);
            for (id, &size) in part.sizes.iter().enumerate() {
                if size <= k as usize {
                    failures.push(format!("component {size} n={n} K={k} t={t}"));
                }
                if size == k as usize + 1 && part.count() > 1 {
                    minimal_components += 1;
                    if !g.is_clique(&part.members(id)) {
                        failures.push(format!("non-clique n={n} K={k} t={t}"));
                    }
                }
            }
            let c = census(&g, k as usize);
            if c.is_connected != (part.count() == 1) {
                failures.push(format!("census mismatch n={n} K={k} t={t}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs (half sampled, half two-block), {} minimal components checked, failures: {:?}",
            3 * STRUCTURE_GRAPHS_PER_K,
            minimal_components,
            failures.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn sandwich() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for mode in [PairMode::Paper, PairMode::UnorderedHalf] {
        for n in (16..=200).chain(log_grid(200, 10_000, 60)) {
            let lower = lower_bound(n, 2, LowerBoundKind::This).unwrap();
            let upper = upper_bound_bonferroni(n, 2, mode).unwrap();
            if let (true, Some(gap), Some(prob)) = (lower.valid, upper.gap(), upper.probability()) {
                checked += 1;
                if lower.gap < gap || lower.probability > prob {
                    violations.push((n, mode));
                }
            }
        }
    }
    outcome(
        checked > 0 && violations.is_empty(),
        format!("{checked} points, violations: {violations:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Mean-trials table regression (K=2)", table1_regression),
        ("Exact enumeration oracle", exact_oracle),
        ("Enumeration equals closed forms at (6,2)", oracle_matches_closed_form),
        ("Monte Carlo vs enumeration at (6,2), 1e7 trials", monte_carlo_vs_oracle),
        ("Empirical point at (16,2), 1e6 trials", empirical_point_n16),
        ("Constant ordering c <= min(a, b)", tightness_ordering),
        ("Asymptotic upper-bound constants", asymptotic_constants),
        ("Structural invariants of sampled graphs", structural_invariants),
        ("Lower bound <= upper bound (K=2)", sandwich),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {}. {name} ({:.1?}): {}",
            i + 1,
            start.elapsed(),
            result.detail
        );
        failed += !result.pass as u32;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() as u32 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

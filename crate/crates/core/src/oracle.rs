//! Ground truth by exhaustive enumeration of all `C(n-1, K)^n` selection profiles.
//!
//! Profiles are visited by a mixed-radix odometer whose digit `i` is the
//! rank of node `i`'s subset; ranks are decoded with the combinatorial
//! number system. Any index interval of the odometer can be enumerated on
//! its own, so the range is split across workers and partial counts summed.

use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::connectivity::census_profile;
use crate::error::{domain, Error, Result};
use crate::params::KOutParams;
use crate::profile::SelectionProfile;
use crate::unionfind::DisjointSets;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

const CHUNK: u64 = 1 << 14;

/// Exact connectivity statistics of `H(n; K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub n: u32,
    pub k: u32,
    pub connected_count: u64,
    pub total_profiles: u64,
    /// `P(n; K)` as an exact fraction.
    pub p_exact: BigRational,
    /// `E[Z_n]`, the mean number of isolated `(K+1)`-components.
    pub z_expectation: BigRational,
}

impl ExactResult {
    pub fn p_float(&self) -> f64 {
        self.p_exact.to_f64().unwrap_or(f64::NAN)
    }

    pub fn disconnect_probability(&self) -> BigRational {
        BigRational::one() - &self.p_exact
    }
}

#[derive(Serialize)]
struct ExactWire {
    n: u32,
    #[serde(rename = "K")]
    k: u32,
    connected_count: u64,
    total_profiles: u64,
    p_exact: String,
    p_exact_float: f64,
    disconnect_exact: String,
    disconnect_float: f64,
    z_expectation: String,
    z_expectation_float: f64,
}

impl Serialize for ExactResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let disconnect = self.disconnect_probability();
        ExactWire {
            n: self.n,
            k: self.k,
            connected_count: self.connected_count,
            total_profiles: self.total_profiles,
            p_exact: self.p_exact.to_string(),
            p_exact_float: self.p_float(),
            disconnect_float: disconnect.to_f64().unwrap_or(f64::NAN),
            disconnect_exact: disconnect.to_string(),
            z_expectation: self.z_expectation.to_string(),
            z_expectation_float: self.z_expectation.to_f64().unwrap_or(f64::NAN),
        }
        .serialize(serializer)
    }
}

fn binomial(m: u64, k: u64) -> u64 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

/// `C(n-1, K)^n` as an exact integer.
pub fn profile_count(params: KOutParams) -> BigUint {
    let per_node = binomial(params.n() as u64 - 1, params.k() as u64);
    num_traits::pow(BigUint::from(per_node), params.n() as usize)
}

/// The `rank`-th `k`-subset of `0..m` in colexicographic order.
pub fn unrank_combination(mut rank: u64, m: u32, k: u32) -> Vec<u32> {
    debug_assert!(rank < binomial(m as u64, k as u64));
    let mut out = vec![0u32; k as usize];
    let mut top = m;
    for slot in (1..=k).rev() {
        // largest c < top with C(c, slot) <= rank
        let mut c = top - 1;
        while binomial(c as u64, slot as u64) > rank {
            c -= 1;
        }
        rank -= binomial(c as u64, slot as u64);
        out[slot as usize - 1] = c;
        top = c;
    }
    out
}

/// Every profile of `params`, visited by index.
struct ProfileSpace {
    params: KOutParams,
    radix: u64,
    /// `subsets[i][rank]`: node `i`'s subset of rank `rank`, as sorted labels.
    subsets: Vec<Vec<Vec<u32>>>,
    total: u64,
}

impl ProfileSpace {
    fn new(params: KOutParams, budget: u64) -> Result<Self> {
        let count = profile_count(params);
        let total = match count.to_u64() {
            Some(t) if t <= budget => t,
            _ => {
                return Err(Error::BudgetExceeded {
                    profiles: count,
                    budget,
                })
            }
        };
        let n = params.n();
        let k = params.k();
        let radix = binomial(n as u64 - 1, k as u64);
        let base: Vec<Vec<u32>> = (0..radix).map(|r| unrank_combination(r, n - 1, k)).collect();
        let subsets = (0..n)
            .map(|i| {
                base.iter()
                    .map(|set| set.iter().map(|&x| if x < i { x } else { x + 1 }).collect())
                    .collect()
            })
            .collect();
        Ok(Self {
            params,
            radix,
            subsets,
            total,
        })
    }

    /// Calls `visit` on each profile with index in `range`.
    fn for_each_in(&self, range: Range<u64>, mut visit: impl FnMut(&SelectionProfile)) {
        if range.is_empty() {
            return;
        }
        let n = self.params.n() as usize;
        let mut digits = vec![0u64; n];
        let mut rest = range.start;
        for d in digits.iter_mut() {
            *d = rest % self.radix;
            rest /= self.radix;
        }
        let flat: Vec<u32> = (0..n)
            .flat_map(|i| self.subsets[i][digits[i] as usize].iter().copied())
            .collect();
        let mut profile = SelectionProfile::from_flat_unchecked(self.params, flat);
        for index in range.clone() {
            visit(&profile);
            if index + 1 == range.end {
                break;
            }
            for (i, d) in digits.iter_mut().enumerate() {
                *d += 1;
                if *d == self.radix {
                    *d = 0;
                    profile.set_choices_of(i, &self.subsets[i][0]);
                } else {
                    profile.set_choices_of(i, &self.subsets[i][*d as usize]);
                    break;
                }
            }
        }
    }

    fn chunks(&self) -> Vec<Range<u64>> {
        (0..self.total.div_ceil(CHUNK))
            .map(|c| c * CHUNK..((c + 1) * CHUNK).min(self.total))
            .collect()
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Enumerates every profile and counts connected realizations and isolated
/// `(K+1)`-components. Refuses when `C(n-1,K)^n` exceeds `budget`.
pub fn exact_connectivity(n: u32, k: u32, budget: u64) -> Result<ExactResult> {
    let params = KOutParams::new(n, k)?;
    let space = ProfileSpace::new(params, budget)?;
    let (connected, z_total) = space
        .chunks()
        .into_par_iter()
        .map(|range| {
            let mut scratch = DisjointSets::default();
            let mut connected = 0u64;
            let mut z_total = 0u64;
            space.for_each_in(range, |profile| {
                let c = census_profile(profile, &mut scratch);
                connected += c.is_connected as u64;
                z_total += c.z_count;
            });
            (connected, z_total)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(ExactResult {
        n,
        k,
        connected_count: connected,
        total_profiles: space.total,
        p_exact: ratio(connected, space.total),
        z_expectation: ratio(z_total, space.total),
    })
}

/// Fraction of profiles in which `{1..r}` has no edge to the other nodes.
pub fn exact_isolated_set_probability(n: u32, k: u32, r: u32, budget: u64) -> Result<BigRational> {
    let params = KOutParams::new(n, k)?;
    if r == 0 || r > n {
        return Err(domain(format!("set size must be in 1..=n (n={n}, r={r})")));
    }
    let space = ProfileSpace::new(params, budget)?;
    let isolated: u64 = space
        .chunks()
        .into_par_iter()
        .map(|range| {
            let mut count = 0u64;
            space.for_each_in(range, |profile| {
                let cut = profile
                    .selections()
                    .any(|(i, j)| (i < r) != (j < r));
                count += !cut as u64;
            });
            count
        })
        .sum();
    if space.total.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(ratio(isolated, space.total))
}

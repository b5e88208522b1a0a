//! Per-node selection sets and their uniform sampling.

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::KOutParams;
use crate::seed::Seed;

/// The choice sets of every node: node `i` selects exactly `K` labels, none equal to `i`.
///
/// Labels are 0-based internally and stored flat, `K` per node, each node's
/// slice sorted ascending. Serialized form is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelectionProfile {
    params: KOutParams,
    choices: Vec<u32>,
}

impl SelectionProfile {
    /// Builds a profile from 0-based choice sets, validating every invariant.
    pub fn from_choices(params: KOutParams, sets: &[Vec<u32>]) -> Result<Self> {
        let n = params.n() as usize;
        let k = params.k() as usize;
        if sets.len() != n {
            return Err(Error::InvalidProfile(format!(
                "expected {n} choice sets, got {}",
                sets.len()
            )));
        }
        let mut choices = Vec::with_capacity(n * k);
        for (i, set) in sets.iter().enumerate() {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k || set.len() != k {
                return Err(Error::InvalidProfile(format!(
                    "node {} must select exactly {k} distinct nodes",
                    i + 1
                )));
            }
            if let Some(&bad) = sorted.iter().find(|&&j| j as usize >= n || j as usize == i) {
                return Err(Error::InvalidProfile(format!(
                    "node {} selects invalid label {}",
                    i + 1,
                    bad as u64 + 1
                )));
            }
            choices.extend_from_slice(&sorted);
        }
        Ok(Self { params, choices })
    }

    /// Same as [`from_choices`](Self::from_choices) with 1-based labels.
    pub fn from_one_based(params: KOutParams, sets: &[Vec<u32>]) -> Result<Self> {
        let zero: Vec<Vec<u32>> = sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&j| {
                        j.checked_sub(1)
                            .ok_or_else(|| Error::InvalidProfile("label 0 in 1-based input".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_choices(params, &zero)
    }

    pub(crate) fn from_flat_unchecked(params: KOutParams, choices: Vec<u32>) -> Self {
        debug_assert_eq!(choices.len(), (params.n() * params.k()) as usize);
        Self { params, choices }
    }

    pub(crate) fn set_choices_of(&mut self, i: usize, set: &[u32]) {
        let k = self.k();
        self.choices[i * k..(i + 1) * k].copy_from_slice(set);
    }

    pub fn params(&self) -> KOutParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n() as usize
    }

    pub fn k(&self) -> usize {
        self.params.k() as usize
    }

    /// Sorted 0-based selections of node `i`.
    pub fn choices_of(&self, i: usize) -> &[u32] {
        let k = self.k();
        &self.choices[i * k..(i + 1) * k]
    }

    /// Iterates `(i, j)` for every selection `j` of every node `i`.
    pub fn selections(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let k = self.k();
        self.choices
            .iter()
            .enumerate()
            .map(move |(idx, &j)| ((idx / k) as u32, j))
    }

    /// 1-based choice sets, the serialized layout.
    pub fn to_one_based(&self) -> Vec<Vec<u32>> {
        (0..self.n())
            .map(|i| self.choices_of(i).iter().map(|&j| j + 1).collect())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidProfile(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileWire {
    n: u32,
    #[serde(rename = "K")]
    k: u32,
    choices: Vec<Vec<u32>>,
}

impl Serialize for SelectionProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileWire {
            n: self.params.n(),
            k: self.params.k(),
            choices: self.to_one_based(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SelectionProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ProfileWire::deserialize(deserializer)?;
        let params = KOutParams::new(wire.n, wire.k).map_err(serde::de::Error::custom)?;
        SelectionProfile::from_one_based(params, &wire.choices).map_err(serde::de::Error::custom)
    }
}

/// Reusable scratch for drawing profiles with partial Fisher-Yates shuffles.
///
/// `pool` holds a permutation of all labels and `pos` its inverse. To draw
/// node `i`'s set, `i` is parked in the last slot and `K` swap steps run over
/// the remaining `n - 1` slots. Any starting arrangement yields a uniform
/// K-subset, so the pool is never re-sorted between nodes; it is reset once
/// per profile so the output depends only on the seed.
#[derive(Debug, Default, Clone)]
pub struct ProfileSampler {
    pool: Vec<u32>,
    pos: Vec<u32>,
}

impl ProfileSampler {
    pub fn new() -> Self {
        Self::default()
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.pool.swap(a, b);
        self.pos[self.pool[a] as usize] = a as u32;
        self.pos[self.pool[b] as usize] = b as u32;
    }

    /// Draws a profile for `params` from `seed`, reusing `out`'s allocation.
    pub fn sample_into(&mut self, params: KOutParams, seed: Seed, out: &mut SelectionProfile) {
        self.sample_into_with(params, &mut seed.rng(), out);
    }

    /// Draws from an already positioned stream; `sample_into` is this with `seed.rng()`.
    pub fn sample_into_with<R: Rng>(
        &mut self,
        params: KOutParams,
        rng: &mut R,
        out: &mut SelectionProfile,
    ) {
        let n = params.n() as usize;
        let k = params.k() as usize;

        self.pool.clear();
        self.pool.extend(0..n as u32);
        self.pos.clear();
        self.pos.extend(0..n as u32);

        out.params = params;
        out.choices.clear();
        out.choices.reserve(n * k);

        let last = n - 1;
        for i in 0..n {
            let at = self.pos[i] as usize;
            self.swap(at, last);
            for t in 0..k {
                let j = t + rng.gen_range(0..(last - t) as u32) as usize;
                self.swap(t, j);
            }
            let start = out.choices.len();
            out.choices.extend_from_slice(&self.pool[..k]);
            out.choices[start..].sort_unstable();
        }
    }

    pub fn sample(&mut self, params: KOutParams, seed: Seed) -> SelectionProfile {
        let mut out = SelectionProfile {
            params,
            choices: Vec::new(),
        };
        self.sample_into(params, seed, &mut out);
        out
    }
}

/// Draws one profile: every node's K-subset uniform over the `C(n-1, K)`
/// subsets of the other labels, nodes independent, deterministic in `seed`.
pub fn sample_profile(params: KOutParams, seed: Seed) -> SelectionProfile {
    ProfileSampler::new().sample(params, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, k: u32) -> KOutParams {
        KOutParams::new(n, k).unwrap()
    }

    #[test]
    fn two_nodes_select_each_other() {
        for s in 0..20 {
            let p = sample_profile(params(2, 1), Seed::new(s, s * 3));
            assert_eq!(p.to_one_based(), vec![vec![2], vec![1]]);
        }
    }

    #[test]
    fn k_equal_n_minus_one_selects_everyone() {
        let p = sample_profile(params(4, 3), Seed::new(99, 0));
        assert_eq!(
            p.to_one_based(),
            vec![vec![2, 3, 4], vec![1, 3, 4], vec![1, 2, 4], vec![1, 2, 3]]
        );
    }

    #[test]
    fn golden_vector_n6_k2() {
        let p = sample_profile(params(6, 2), Seed::new(0xDEAD_BEEF, 0));
        assert_eq!(
            p.to_json(),
            r#"{"n":6,"K":2,"choices":[[2,4],[1,3],[2,6],[1,2],[3,4],[1,2]]}"#
        );
    }

    #[test]
    fn reused_sampler_matches_fresh_one() {
        let mut sampler = ProfileSampler::new();
        let pr = params(11, 3);
        let _ = sampler.sample(params(30, 5), Seed::new(1, 1));
        for t in 0..50 {
            assert_eq!(
                sampler.sample(pr, Seed::new(5, t)),
                sample_profile(pr, Seed::new(5, t))
            );
        }
    }

    #[test]
    fn rejects_malformed_profiles() {
        let pr = params(3, 1);
        assert!(SelectionProfile::from_choices(pr, &[vec![1], vec![2]]).is_err());
        assert!(SelectionProfile::from_choices(pr, &[vec![0], vec![2], vec![0]]).is_err());
        assert!(SelectionProfile::from_choices(pr, &[vec![1], vec![2], vec![5]]).is_err());
        assert!(SelectionProfile::from_choices(pr, &[vec![1, 2], vec![2], vec![0]]).is_err());
        assert!(SelectionProfile::from_json(r#"{"n":3,"K":1,"choices":[[0],[1],[1]]}"#).is_err());
        assert!(SelectionProfile::from_json(r#"{"n":3,"K":3,"choices":[]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = sample_profile(params(9, 3), Seed::new(42, 17));
        assert_eq!(SelectionProfile::from_json(&p.to_json()).unwrap(), p);
    }
}

//! Component structure of K-out graphs and the census of isolated `(K+1)`-sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::KOutGraph;
use crate::profile::SelectionProfile;
use crate::unionfind::DisjointSets;

/// Assignment of each node to a connected component.
///
/// Component ids are dense and numbered by first appearance in node order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    pub component_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// 0-based members of component `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        self.component_of
            .iter()
            .enumerate()
            .filter(|&(_, &id)| id as usize == c)
            .map(|(v, _)| v)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub is_connected: bool,
    /// Component size -> number of components of that size.
    pub size_histogram: BTreeMap<usize, u64>,
    /// Number of isolated components with exactly `K+1` nodes.
    pub z_count: u64,
}

impl CensusResult {
    fn from_sizes(n: usize, k: usize, sizes: impl Iterator<Item = usize>) -> Self {
        let mut size_histogram = BTreeMap::new();
        for s in sizes {
            *size_histogram.entry(s).or_insert(0u64) += 1;
        }
        let components: u64 = size_histogram.values().sum();
        let is_connected = components == 1 && size_histogram.contains_key(&n);
        // A graph on exactly K+1 nodes is one component, not an isolated sub-network.
        let z_count = if is_connected {
            0
        } else {
            size_histogram.get(&(k + 1)).copied().unwrap_or(0)
        };
        Self {
            is_connected,
            size_histogram,
            z_count,
        }
    }

    pub fn component_count(&self) -> u64 {
        self.size_histogram.values().sum()
    }

    pub fn smallest_component(&self) -> Option<usize> {
        self.size_histogram.keys().next().copied()
    }
}

pub fn components(graph: &KOutGraph) -> ComponentPartition {
    let n = graph.n();
    let mut ds = DisjointSets::new(n);
    for (u, v) in graph.edges() {
        ds.union(u as usize, v as usize);
    }
    let mut id_of_root = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut component_of = Vec::with_capacity(n);
    for v in 0..n {
        let r = ds.find(v);
        if id_of_root[r] == u32::MAX {
            id_of_root[r] = sizes.len() as u32;
            sizes.push(0);
        }
        let id = id_of_root[r];
        sizes[id as usize] += 1;
        component_of.push(id);
    }
    ComponentPartition {
        component_of,
        sizes,
    }
}

/// Component-size census of a graph generated with parameter `k`.
pub fn census(graph: &KOutGraph, k: usize) -> CensusResult {
    let part = components(graph);
    CensusResult::from_sizes(graph.n(), k, part.sizes.into_iter())
}

/// Census computed straight from the selections, skipping adjacency
/// construction. Each selection `j in Γ_i` is the edge `{i, j}`, so the
/// result equals `census(&build_graph(profile), K)`.
pub fn census_profile(profile: &SelectionProfile, scratch: &mut DisjointSets) -> CensusResult {
    let n = profile.n();
    scratch.reset(n);
    for (i, j) in profile.selections() {
        scratch.union(i as usize, j as usize);
    }
    CensusResult::from_sizes(n, profile.k(), scratch.set_sizes())
}

/// Connectivity only, with an early exit on the union-find set count.
pub fn is_connected_profile(profile: &SelectionProfile, scratch: &mut DisjointSets) -> bool {
    scratch.reset(profile.n());
    for (i, j) in profile.selections() {
        scratch.union(i as usize, j as usize);
        if scratch.set_count() == 1 {
            return true;
        }
    }
    scratch.set_count() == 1
}

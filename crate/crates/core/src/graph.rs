use serde::Serialize;

use crate::params::KOutParams;
use crate::profile::SelectionProfile;

/// Undirected graph induced by a selection profile: `{i, j}` is an edge iff
/// `j` selected `i` or `i` selected `j`.
///
/// Stored as compressed sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOutGraph {
    params: KOutParams,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl KOutGraph {
    pub fn params(&self) -> KOutParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Sorted 0-based neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, 0-based, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u as u32, v))
        })
    }

    /// True when every pair of `members` is adjacent.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &u)| {
            members[a + 1..].iter().all(|&v| self.has_edge(u, v))
        })
    }

    /// 1-based edge list, for display and serialization.
    pub fn edges_one_based(&self) -> Vec<(u32, u32)> {
        self.edges().map(|(u, v)| (u + 1, v + 1)).collect()
    }
}

#[derive(Serialize)]
struct GraphWire {
    n: u32,
    #[serde(rename = "K")]
    k: u32,
    edges: Vec<(u32, u32)>,
}

impl Serialize for KOutGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphWire {
            n: self.params.n(),
            k: self.params.k(),
            edges: self.edges_one_based(),
        }
        .serialize(serializer)
    }
}

pub fn build_graph(profile: &SelectionProfile) -> KOutGraph {
    let n = profile.n();
    let mut lists: Vec<Vec<u32>> = vec![Vec::with_capacity(2 * profile.k()); n];
    for (i, j) in profile.selections() {
        lists[i as usize].push(j);
        lists[j as usize].push(i);
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut neighbors = Vec::with_capacity(2 * n * profile.k());
    offsets.push(0);
    for mut list in lists {
        list.sort_unstable();
        list.dedup();
        neighbors.extend_from_slice(&list);
        offsets.push(neighbors.len());
    }
    KOutGraph {
        params: profile.params(),
        offsets,
        neighbors,
    }
}

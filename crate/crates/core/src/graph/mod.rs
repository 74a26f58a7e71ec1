//! Directed graphs, generators and file formats.
//!
//! A [`DirectedGraph`] is a node count plus a sorted, duplicate-free list of
//! arcs. Nodes are always labelled densely `0..n`; every operation that drops
//! nodes compacts the labels while preserving their relative order.

mod generate;
mod io;

pub use generate::{
    erdos_renyi, hierarchical_outerplanar, hierarchical_ternary, scale_free, Family, GeneratorSpec,
    ScaleFreeParams, SplitMixSource,
};
pub use io::{parse_edge_list, parse_pajek, read_graph_file, write_edge_list, write_pajek};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node label in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Directed graph with 0/1 connectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
    allow_self_loops: bool,
}

impl DirectedGraph {
    /// Builds a graph from arbitrary arcs. Duplicates are collapsed; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, false)
    }

    /// Same as [`DirectedGraph::new`] but keeps self-loops.
    pub fn with_self_loops<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, true)
    }

    pub fn empty(n: usize) -> Self {
        DirectedGraph {
            n,
            edges: Vec::new(),
            allow_self_loops: false,
        }
    }

    fn build<I>(n: usize, edges: I, allow_self_loops: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::param(format!(
                    "edge ({s}, {t}) has an endpoint outside 0..{n}"
                )));
            }
            if s == t && !allow_self_loops {
                return Err(Error::param(format!("self-loop on node {s} not allowed")));
            }
            list.push((NodeId(s), NodeId(t)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(DirectedGraph {
            n,
            edges: list,
            allow_self_loops,
        })
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        if n < 2 {
            return Self::empty(n);
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle arcs are in range")
    }

    /// Complete digraph: every ordered pair of distinct nodes.
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
        Self::new(n, arcs).expect("complete arcs are in range")
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Arcs sorted by `(source, target)`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn allows_self_loops(&self) -> bool {
        self.allow_self_loops
    }

    pub fn has_edge(&self, s: NodeId, t: NodeId) -> bool {
        self.edges.binary_search(&(s, t)).is_ok()
    }

    pub fn self_loop_count(&self) -> usize {
        self.edges.iter().filter(|(s, t)| s == t).count()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, t) in &self.edges {
            d[t.0] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(s, _) in &self.edges {
            d[s.0] += 1;
        }
        d
    }

    /// Out-neighbour lists, indexed by source.
    pub fn out_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(s, t) in &self.edges {
            adj[s.0].push(t.0);
        }
        adj
    }

    /// Removes `v` and every arc touching it.
    ///
    /// Returns the reduced graph and the re-index map: `map[old]` is the new
    /// id of `old`, or `None` for the removed node.
    pub fn remove_node(&self, v: NodeId) -> Result<(DirectedGraph, Vec<Option<NodeId>>)> {
        if v.0 >= self.n {
            return Err(Error::param(format!(
                "node {v} out of range for a graph with {} nodes",
                self.n
            )));
        }
        let map: Vec<Option<NodeId>> = (0..self.n)
            .map(|i| match i.cmp(&v.0) {
                std::cmp::Ordering::Less => Some(NodeId(i)),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(NodeId(i - 1)),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(s, t)| Some((map[s.0]?, map[t.0]?)))
            .collect();
        let g = DirectedGraph {
            n: self.n - 1,
            edges,
            allow_self_loops: self.allow_self_loops,
        };
        Ok((g, map))
    }

    /// In- and out-degree histograms over `k = 0..=max_degree`.
    pub fn degree_distribution(&self) -> DegreeDistribution {
        DegreeDistribution {
            in_hist: histogram(&self.in_degrees()),
            out_hist: histogram(&self.out_degrees()),
        }
    }
}

fn histogram(degrees: &[usize]) -> Vec<usize> {
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for &d in degrees {
        h[d] += 1;
    }
    h
}

/// `in_hist[k]` is the number of nodes with in-degree `k`; same for out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDistribution {
    pub in_hist: Vec<usize>,
    pub out_hist: Vec<usize>,
}

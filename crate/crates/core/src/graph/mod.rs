//! Graph representation and the primitives every other module builds on.
//!
//! Vertices are dense integers `0..n`. A [`Graph`] is stored in compressed
//! sparse row form with each neighbour list sorted ascending, so membership
//! tests are a binary search and iteration is cache-friendly.

mod disjoint_sets;
pub mod io;
mod ordering;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

pub use disjoint_sets::DisjointSets;
pub use ordering::Ordering;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Counts of input defects that were repaired while building a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl BuildStats {
    pub fn is_clean(&self) -> bool {
        self.duplicate_edges == 0 && self.self_loops == 0
    }
}

/// An undirected simple graph on the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph, silently dropping self-loops and repeated edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::with_stats(n, edges).map(|(g, _)| g)
    }

    /// Builds a graph and reports how many self-loops and repeated edges
    /// were dropped on the way.
    pub fn with_stats<I>(n: usize, edges: I) -> Result<(Graph, BuildStats)>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut stats = BuildStats::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            pairs.push((u, v));
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }

        // Sort every list, then squeeze out duplicates in place.
        let mut write = 0;
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let (start, end) = (offsets[v], offsets[v + 1]);
            targets[start..end].sort_unstable();
            let mut last = None;
            for i in start..end {
                let t = targets[i];
                if last == Some(t) {
                    continue;
                }
                last = Some(t);
                targets[write] = t;
                write += 1;
            }
            new_offsets.push(write);
        }
        targets.truncate(write);
        stats.duplicate_edges = pairs.len() - write / 2;

        Ok((
            Graph {
                offsets: new_offsets,
                targets,
            },
            stats,
        ))
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// `G + F`: this graph with the given pairs added as edges.
    pub fn with_extra_edges(&self, extra: &[(Vertex, Vertex)]) -> Result<Graph> {
        Graph::new(self.n(), self.edges().chain(extra.iter().copied()))
    }

    /// Checks the simple-undirected invariants; returns a description of the
    /// first violation found.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.n();
        for v in 0..n {
            let nb = self.neighbors(v);
            for w in nb.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {v} not strictly increasing"));
                }
            }
            for &u in nb {
                if u >= n {
                    return Err(format!("neighbour {u} of {v} out of range"));
                }
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.has_edge(u, v) {
                    return Err(format!("edge {v}-{u} not symmetric"));
                }
            }
        }
        if self.targets.len() % 2 != 0 {
            return Err("odd adjacency total".into());
        }
        Ok(())
    }
}

/// A list of unordered vertex pairs with no repeats and no self-pairs.
///
/// Pairs are stored normalised as `(min, max)` in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<(Vertex, Vertex)>);

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet(Vec::new())
    }

    pub fn with_capacity(capacity: usize) -> EdgeSet {
        EdgeSet(Vec::with_capacity(capacity))
    }

    pub fn from_pairs<I>(pairs: I) -> Result<EdgeSet>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::InvalidEdgeSet(format!("self-pair {u}-{v}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidEdgeSet(format!(
                    "pair {}-{} repeated",
                    e.0, e.1
                )));
            }
            out.push(e);
        }
        Ok(EdgeSet(out))
    }

    /// Appends a pair the caller knows to be new.
    pub(crate) fn push_unchecked(&mut self, u: Vertex, v: Vertex) {
        debug_assert_ne!(u, v);
        self.0.push((u.min(v), u.max(v)));
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.iter().copied()
    }

    /// The pairs sorted lexicographically; handy for set comparisons.
    pub fn sorted(&self) -> Vec<(Vertex, Vertex)> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

/// For each vertex, its neighbours of higher rank listed in increasing rank
/// order. Built in `O(n + m)` by sweeping the ordering once.
pub(crate) struct UpwardAdjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl UpwardAdjacency {
    pub(crate) fn new(g: &Graph, l: &Ordering) -> Self {
        let n = g.n();
        assert!(u32::try_from(g.m()).is_ok(), "at most u32::MAX edges");
        let mut offsets = vec![0u32; n + 1];
        for u in 0..n {
            let ru = l.rank(u);
            offsets[u + 1] = g.neighbors(u).iter().filter(|&&w| l.rank(w) > ru).count() as u32;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; offsets[n] as usize];
        for &w in l.positions() {
            let rw = l.rank(w);
            for &u in g.neighbors(w) {
                if l.rank(u) < rw {
                    targets[cursor[u] as usize] = w as u32;
                    cursor[u] += 1;
                }
            }
        }
        UpwardAdjacency { offsets, targets }
    }

    /// Higher-ranked neighbours of `v`, in increasing rank.
    #[inline]
    pub(crate) fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
            .iter()
            .map(|&w| w as Vertex)
    }
}

/// Component label per vertex and the number of components. Labels are
/// assigned in order of each component's minimum vertex id.
pub fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut label = vec![UNSEEN; n];
    let mut queue = VecDeque::new();
    let mut count = 0;
    for s in 0..n {
        if label[s] != UNSEEN {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == UNSEEN {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Partition of the vertices into connected components, ordered by their
/// minimum vertex; each part is sorted ascending.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let (label, count) = component_labels(g);
    let mut parts = vec![Vec::new(); count];
    for (v, &c) in label.iter().enumerate() {
        parts[c].push(v);
    }
    parts
}

pub fn is_connected(g: &Graph) -> bool {
    component_labels(g).1 <= 1
}

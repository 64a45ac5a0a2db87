//! Strong reachability, generalised colouring numbers and admissibility.
//!
//! Conventions: `SReach_r[G,L,v]` always contains `v` itself, so
//! `col_r(G,L) >= 1` on any non-empty graph. A vertex `u` is strongly
//! `r`-reachable from `v` when `u <=_L v` and some path of length at most
//! `r` joins them with every internal vertex `>_L v`.

mod admissibility;
mod orderings;

use serde::Serialize;

pub use admissibility::{
    adm_exact, adm_graph, adm_graph_greedy, adm_greedy_lower, max_disjoint_packing, valid_paths,
    AdmResult, PathFamily, DEFAULT_BUDGET,
};
pub use orderings::{best_ordering_bruteforce, degeneracy_ordering, BRUTEFORCE_LIMIT};

use crate::graph::{Graph, Ordering, Vertex};

/// Reusable BFS state so that sweeping every vertex costs no allocation.
pub(crate) struct ReachScratch {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<Vertex>,
    next: Vec<Vertex>,
}

impl ReachScratch {
    pub(crate) fn new(n: usize) -> Self {
        ReachScratch {
            stamp: vec![0; n],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Appends `SReach_r[G,L,v]` to `out` (unsorted, `v` first).
    pub(crate) fn sreach_into(
        &mut self,
        g: &Graph,
        l: &Ordering,
        v: Vertex,
        r: usize,
        out: &mut Vec<Vertex>,
    ) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let rv = l.rank(v);
        self.stamp[v] = epoch;
        out.push(v);
        self.frontier.clear();
        self.frontier.push(v);
        for _ in 0..r {
            if self.frontier.is_empty() {
                break;
            }
            self.next.clear();
            for &x in &self.frontier {
                for &y in g.neighbors(x) {
                    if self.stamp[y] == epoch {
                        continue;
                    }
                    self.stamp[y] = epoch;
                    if l.rank(y) < rv {
                        // Endpoints below v are collected, never expanded.
                        out.push(y);
                    } else {
                        self.next.push(y);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
    }
}

/// `SReach_r[G,L,v]`, sorted ascending by vertex id.
pub fn sreach(g: &Graph, l: &Ordering, v: Vertex, r: usize) -> Vec<Vertex> {
    let mut out = Vec::new();
    ReachScratch::new(g.n()).sreach_into(g, l, v, r, &mut out);
    out.sort_unstable();
    out
}

/// Per-vertex strong reachability sizes and their maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColProfile {
    pub r: usize,
    pub sizes: Vec<usize>,
    pub value: usize,
    /// Lowest vertex id attaining `value`; `None` only on the empty graph.
    pub argmax: Option<Vertex>,
}

/// `col_r(G,L)` together with every `|SReach_r[G,L,v]|`.
pub fn col(g: &Graph, l: &Ordering, r: usize) -> ColProfile {
    let mut scratch = ReachScratch::new(g.n());
    let mut buf = Vec::new();
    let mut sizes = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        buf.clear();
        scratch.sreach_into(g, l, v, r, &mut buf);
        sizes.push(buf.len());
    }
    let mut value = 0;
    let mut argmax = None;
    for (v, &s) in sizes.iter().enumerate() {
        if s > value {
            value = s;
            argmax = Some(v);
        }
    }
    ColProfile {
        r,
        sizes,
        value,
        argmax,
    }
}

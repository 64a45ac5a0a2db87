use std::cmp::Reverse;
use std::collections::BinaryHeap;

use itertools::Itertools;

use super::admissibility::adm_exact;
use crate::error::{Error, Result};
use crate::graph::{Graph, Ordering, Vertex};

/// Largest graph [`best_ordering_bruteforce`] will attempt.
pub const BRUTEFORCE_LIMIT: usize = 9;

/// Smallest-last ordering: repeatedly delete a vertex of minimum remaining
/// degree (lowest id on ties) and place it at the large end.
///
/// Minimises `col_1(G,L)`, which equals the degeneracy plus one.
pub fn degeneracy_ordering(g: &Graph) -> Ordering {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, Vertex)>> =
        (0..n).map(|v| Reverse((degree[v], v))).collect();
    let mut position = vec![0; n];
    let mut slot = n;
    while let Some(Reverse((d, v))) = heap.pop() {
        if removed[v] || d != degree[v] {
            continue;
        }
        removed[v] = true;
        slot -= 1;
        position[slot] = v;
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                heap.push(Reverse((degree[w], w)));
            }
        }
    }
    Ordering::from_positions(position).expect("every vertex removed once")
}

/// Exhaustive minimiser of `adm_r(G,L)` over all `n!` orderings, for use as
/// a test oracle. The first minimiser in lexicographic order of the vertex
/// sequence is returned.
pub fn best_ordering_bruteforce(g: &Graph, r: usize) -> Result<(Ordering, usize)> {
    let n = g.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut best: Option<(Ordering, usize)> = None;
    for perm in (0..n).permutations(n) {
        let l = Ordering::from_positions(perm)?;
        let mut value = 0;
        let cap = best.as_ref().map(|b| b.1);
        for v in 0..n {
            value = value.max(adm_exact(g, &l, v, r, u64::MAX)?.0);
            if cap.is_some_and(|c| value >= c) {
                break;
            }
        }
        if cap.is_none_or(|c| value < c) {
            best = Some((l, value));
        }
    }
    Ok(best.unwrap_or((Ordering::natural(0), 0)))
}

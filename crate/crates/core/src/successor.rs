//! From a degree-3 spanning tree to a 3-walk and a successor relation.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph, Vertex};

/// A walk through a tree together with how often it visits each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<Vertex>,
    pub visits: Vec<usize>,
}

impl Walk {
    pub fn max_visits(&self) -> usize {
        self.visits.iter().copied().max().unwrap_or(0)
    }
}

/// Depth-first traversal of a tree of maximum degree 3.
///
/// The root is the lowest-id leaf (vertex 0 for a single vertex) and
/// children are visited in ascending id. The walk records every arrival at
/// a vertex, including returns from children, but stops after the last
/// return to the root's only child, so every vertex `v` appears exactly
/// `deg_T(v)` times (the root of a one-vertex tree once). Hence it is a
/// 3-walk.
pub fn tree_to_kwalk(t: &Graph) -> Result<Walk> {
    let n = t.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if t.m() + 1 != n || !is_connected(t) {
        return Err(Error::NotATree(format!("{n} vertices, {} edges", t.m())));
    }
    if t.max_degree() > 3 {
        return Err(Error::NotATree(format!(
            "maximum degree {} exceeds 3",
            t.max_degree()
        )));
    }
    let root = (0..n)
        .find(|&v| t.degree(v) <= 1)
        .expect("trees have leaves");

    let mut vertices = Vec::with_capacity(2 * n);
    let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(root, None, 0)];
    vertices.push(root);
    while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
        let nb = t.neighbors(v);
        while *next < nb.len() && Some(nb[*next]) == parent {
            *next += 1;
        }
        if *next < nb.len() {
            let c = nb[*next];
            *next += 1;
            vertices.push(c);
            stack.push((c, Some(v), 0));
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                vertices.push(p);
            }
        }
    }
    if n > 1 {
        // Drop the final return to the root.
        vertices.pop();
    }
    let mut visits = vec![0; n];
    for &v in &vertices {
        visits[v] += 1;
    }
    Ok(Walk { vertices, visits })
}

/// A linear order of all vertices, read as the successor pairs
/// `(p_0, p_1), (p_1, p_2), ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuccessorRelation {
    pub order: Vec<Vertex>,
}

impl SuccessorRelation {
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.order.windows(2).map(|w| (w[0], w[1]))
    }

    /// One vertex per line, in successor order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(8 * self.order.len());
        for v in &self.order {
            writeln!(out, "{v}").unwrap();
        }
        out
    }
}

/// Orders vertices by their first appearance in the walk.
pub fn walk_to_successor(w: &Walk) -> SuccessorRelation {
    let mut seen = vec![false; w.visits.len()];
    let mut order = Vec::with_capacity(w.visits.len());
    for &v in &w.vertices {
        if !seen[v] {
            seen[v] = true;
            order.push(v);
        }
    }
    SuccessorRelation { order }
}

/// Whether `s` is a single directed path through all of `0..n`.
pub fn verify_successor(s: &SuccessorRelation, n: usize) -> bool {
    if s.order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &s.order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    s.pairs().count() == n.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    /// Random tree of maximum degree 3 on `n` vertices.
    fn random_degree3_tree(n: usize, seed: u64) -> Graph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut deg = vec![0usize; n];
        let mut edges = Vec::new();
        for v in 1..n {
            loop {
                let p = rng.gen_range(0..v);
                if deg[p] < 3 {
                    deg[p] += 1;
                    deg[v] += 1;
                    edges.push((p, v));
                    break;
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn path_walk() {
        let w = tree_to_kwalk(&generators::path(3)).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 1]);
        let s = walk_to_successor(&w);
        assert_eq!(s.order, vec![0, 1, 2]);
        assert_eq!(s.pairs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn star_walk_from_leaf() {
        let w = tree_to_kwalk(&generators::star(4)).unwrap();
        assert_eq!(w.vertices, vec![1, 0, 2, 0, 3, 0]);
        assert_eq!(w.visits, vec![3, 1, 1, 1]);
        assert_eq!(walk_to_successor(&w).order, vec![1, 0, 2, 3]);
    }

    #[test]
    fn single_vertex() {
        let w = tree_to_kwalk(&Graph::empty(1)).unwrap();
        assert_eq!(w.vertices, vec![0]);
        let s = walk_to_successor(&w);
        assert_eq!(s.pairs().count(), 0);
        assert!(verify_successor(&s, 1));
    }

    #[test]
    fn rejects_non_trees() {
        assert!(tree_to_kwalk(&generators::cycle(4)).is_err());
        assert!(tree_to_kwalk(&generators::star(5)).is_err());
        assert!(tree_to_kwalk(&Graph::empty(2)).is_err());
        assert!(tree_to_kwalk(&Graph::empty(0)).is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_successor(
            &SuccessorRelation {
                order: vec![3, 1, 4, 0, 2]
            },
            5
        ));
        assert!(!verify_successor(
            &SuccessorRelation {
                order: vec![3, 1, 1, 0, 2]
            },
            5
        ));
        assert!(!verify_successor(
            &SuccessorRelation { order: vec![0, 1] },
            3
        ));
        assert!(!verify_successor(
            &SuccessorRelation {
                order: vec![0, 7, 1]
            },
            3
        ));
    }

    #[test]
    fn visit_counts_equal_degrees() {
        for seed in 0..50 {
            let t = random_degree3_tree(10, seed);
            let w = tree_to_kwalk(&t).unwrap();
            for v in 0..10 {
                assert_eq!(w.visits[v], t.degree(v));
            }
            for pair in w.vertices.windows(2) {
                assert!(t.has_edge(pair[0], pair[1]));
            }
        }
    }

    #[test]
    fn thousand_random_trees() {
        for seed in 0..1000u64 {
            let n = 1 + (seed as usize % 60);
            let t = random_degree3_tree(n, seed);
            let w = tree_to_kwalk(&t).unwrap();
            assert!(w.max_visits() <= 3);
            assert!(verify_successor(&walk_to_successor(&w), n));
        }
    }

    proptest! {
        #[test]
        fn successor_is_a_permutation(n in 1usize..200, seed in any::<u64>()) {
            let t = random_degree3_tree(n, seed);
            let w = tree_to_kwalk(&t).unwrap();
            prop_assert!(w.max_visits() <= 3);
            prop_assert!(w.visits.iter().all(|&c| c >= 1));
            let s = walk_to_successor(&w);
            prop_assert!(verify_successor(&s, n));
        }
    }
}

use crate::error::{Error, Result};
use crate::graph::{
    component_labels, DisjointSets, EdgeSet, Graph, Ordering, UpwardAdjacency, Vertex,
};

/// Parent sentinel for roots.
pub(crate) const NO_PARENT: u32 = u32::MAX;

/// The backbone `U`: a spanning tree of `G` that contains, for every vertex
/// `u`, one `G`-edge from `u` into each child subtree of `u` in the
/// elimination tree. Rooted like the elimination tree, at the L-minimum.
///
/// On a disconnected graph this is a forest with one root per component,
/// listed in L order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackboneTree {
    edges: EdgeSet,
    parent: Vec<u32>,
    /// Component index per vertex, numbered in order of `roots`.
    component: Vec<u32>,
    roots: Vec<Vertex>,
}

impl BackboneTree {
    /// Wraps an externally chosen backbone, e.g. one drawn by hand. The edges
    /// must form a spanning tree (or forest, one tree per component) of `g`
    /// using only edges of `g`; each tree is rooted at its L-minimum.
    pub fn from_edges<I>(g: &Graph, l: &Ordering, edges: I) -> Result<BackboneTree>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges = EdgeSet::from_pairs(edges)?;
        let n = g.n();
        let mut ds = DisjointSets::new(n);
        for (u, v) in edges.iter() {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if !g.has_edge(u, v) {
                return Err(Error::InvalidEdgeSet(format!(
                    "backbone edge {u}-{v} is not an edge of the graph"
                )));
            }
            if !ds.union_roots(u, v) {
                return Err(Error::NotATree(format!(
                    "backbone edge {u}-{v} closes a cycle"
                )));
            }
        }
        let (_, count) = component_labels(g);
        if edges.len() + count != n {
            return Err(Error::NotATree(format!(
                "{} backbone edges cannot span {n} vertices in {count} components",
                edges.len()
            )));
        }
        Ok(Self::orient(n, edges, l))
    }

    /// Roots every tree of the forest at its L-minimum by breadth-first
    /// search, labelling components on the way.
    fn orient(n: usize, edges: EdgeSet, l: &Ordering) -> BackboneTree {
        // Inclusive end positions, then fill each list from its end so that
        // offsets[v] finishes at the start of v's list.
        let mut offsets = vec![0u32; n + 1];
        for (u, v) in edges.iter() {
            offsets[u] += 1;
            offsets[v] += 1;
        }
        for i in 1..=n {
            offsets[i] += offsets[i - 1];
        }
        let mut adj = vec![0u32; 2 * edges.len()];
        for (u, v) in edges.iter() {
            offsets[u] -= 1;
            adj[offsets[u] as usize] = v as u32;
            offsets[v] -= 1;
            adj[offsets[v] as usize] = u as u32;
        }

        const UNSEEN: u32 = u32::MAX;
        let mut parent = vec![NO_PARENT; n];
        let mut component = vec![UNSEEN; n];
        let mut roots = Vec::new();
        let mut queue: Vec<u32> = Vec::with_capacity(n);
        for &r in l.positions() {
            if component[r] != UNSEEN {
                continue;
            }
            let c = roots.len() as u32;
            roots.push(r);
            component[r] = c;
            queue.clear();
            queue.push(r as u32);
            let mut head = 0;
            while let Some(&u) = queue.get(head) {
                head += 1;
                let u = u as usize;
                for &w in &adj[offsets[u] as usize..offsets[u + 1] as usize] {
                    if component[w as usize] == UNSEEN {
                        component[w as usize] = c;
                        parent[w as usize] = u as u32;
                        queue.push(w);
                    }
                }
            }
        }
        BackboneTree {
            edges,
            parent,
            component,
            roots,
        }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p as Vertex),
        }
    }

    pub fn parents(&self) -> Vec<Option<Vertex>> {
        (0..self.len()).map(|v| self.parent(v)).collect()
    }

    pub(crate) fn into_raw_parents(self) -> Vec<u32> {
        self.parent
    }

    pub(crate) fn component_labels(&self) -> &[u32] {
        &self.component
    }

    pub fn root(&self) -> Option<Vertex> {
        self.roots.first().copied()
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    /// Children of every vertex sorted by increasing rank, as CSR
    /// `(offsets, targets)`.
    pub(crate) fn children_by_rank(&self, l: &Ordering) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let mut count = vec![0u32; n + 1];
        for &p in self.parent.iter().filter(|&&p| p != NO_PARENT) {
            count[p as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut cursor = count.clone();
        let mut targets = vec![0u32; count[n] as usize];
        for &w in l.positions() {
            let p = self.parent[w];
            if p != NO_PARENT {
                targets[cursor[p as usize] as usize] = w as u32;
                cursor[p as usize] += 1;
            }
        }
        (count, targets)
    }
}

/// Union-find scan from the largest vertex down. Higher-ranked neighbours
/// of `u` are visited in increasing rank, and `uv` joins the backbone when
/// `v` lies in a class not yet merged with `u`. The first neighbour met in
/// each class is therefore the L-smallest neighbour of `u` in that child
/// subtree.
pub(crate) fn backbone_forest(g: &Graph, l: &Ordering) -> BackboneTree {
    assert_eq!(g.n(), l.len(), "ordering size must match the graph");
    let n = g.n();
    let up = UpwardAdjacency::new(g, l);
    let mut ds = DisjointSets::new(n);
    let mut edges = EdgeSet::with_capacity(n.saturating_sub(1));
    for p in (0..n).rev() {
        let u = l.vertex_at(p);
        for v in up.neighbors(u) {
            if ds.union_roots(u, v) {
                edges.push_unchecked(u, v);
            }
        }
    }
    BackboneTree::orient(n, edges, l)
}

/// Backbone tree of a connected graph.
pub fn build_backbone(g: &Graph, l: &Ordering) -> Result<BackboneTree> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (_, count) = component_labels(g);
    if count > 1 {
        return Err(Error::Disconnected { components: count });
    }
    Ok(backbone_forest(g, l))
}

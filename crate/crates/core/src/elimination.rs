//! Rooted elimination trees.
//!
//! For a connected graph the root is the L-minimum vertex; removing it splits
//! the graph into components, each of which contributes its own elimination
//! tree as a child subtree. The same tree falls out of one union-find scan
//! over the ordering from the largest vertex down: when `u` is processed,
//! every class of already-processed neighbours is a child subtree of `u`,
//! and the class's L-minimum is that child.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{component_labels, DisjointSets, Graph, Ordering, UpwardAdjacency, Vertex};

/// A rooted forest given by parent pointers, with depths and preorder
/// intervals precomputed so ancestor queries are `O(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTree {
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<usize>,
    roots: Vec<Vertex>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    preorder: Vec<Vertex>,
}

impl EliminationTree {
    /// Builds the forest from parent pointers; fails if they contain a cycle.
    pub fn from_parents(parent: Vec<Option<Vertex>>) -> Result<EliminationTree> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(v),
                Some(p) if p >= n => return Err(Error::VertexOutOfRange { vertex: p, n }),
                Some(p) if p == v => {
                    return Err(Error::NotATree(format!("vertex {v} is its own parent")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let mut depth = vec![0; n];
        let mut tin = vec![usize::MAX; n];
        let mut tout = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack: Vec<(Vertex, usize)> = Vec::new();
        for &root in &roots {
            tin[root] = preorder.len();
            preorder.push(root);
            stack.push((root, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&c) = children[v].get(*next) {
                    *next += 1;
                    depth[c] = depth[v] + 1;
                    tin[c] = preorder.len();
                    preorder.push(c);
                    stack.push((c, 0));
                } else {
                    tout[v] = preorder.len();
                    stack.pop();
                }
            }
        }
        if preorder.len() != n {
            return Err(Error::NotATree("parent pointers contain a cycle".into()));
        }
        Ok(EliminationTree {
            parent,
            children,
            depth,
            roots,
            tin,
            tout,
            preorder,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// The root of a tree (the first root of a forest).
    pub fn root(&self) -> Option<Vertex> {
        self.roots.first().copied()
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    /// Children in ascending id order.
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().map_or(0, |d| d + 1)
    }

    /// Whether `a` is an ancestor of `b`; every vertex is its own ancestor.
    #[inline]
    pub fn is_ancestor(&self, a: Vertex, b: Vertex) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn subtree_size(&self, u: Vertex) -> usize {
        self.tout[u] - self.tin[u]
    }

    /// Serialises as one `vertex parent` line per vertex, `-` for roots.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, p) in self.parent.iter().enumerate() {
            match p {
                Some(p) => writeln!(out, "{v} {p}").unwrap(),
                None => writeln!(out, "{v} -").unwrap(),
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<EliminationTree> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse {
                line: i + 1,
                message: m.to_string(),
            };
            let mut toks = line.split_whitespace();
            let v: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad vertex"))?;
            let p = match toks.next() {
                Some("-") => None,
                Some(t) => Some(t.parse::<usize>().map_err(|_| err("bad parent"))?),
                None => return Err(err("missing parent")),
            };
            entries.push((v, p));
        }
        let n = entries.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for (v, p) in entries {
            if v >= n || seen[v] {
                return Err(Error::NotATree(format!("vertex {v} missing or repeated")));
            }
            seen[v] = true;
            parent[v] = p;
        }
        Self::from_parents(parent)
    }
}

fn scan(g: &Graph, l: &Ordering) -> (Vec<Option<Vertex>>, u64) {
    let n = g.n();
    let up = UpwardAdjacency::new(g, l);
    let mut ds = DisjointSets::keyed(l.ranks().to_vec());
    let mut parent = vec![None; n];
    for p in (0..n).rev() {
        let u = l.vertex_at(p);
        for v in up.neighbors(u) {
            let ru = ds.find_root(u);
            let rv = ds.find_root(v);
            if ru != rv {
                parent[ds.min_of_root(rv)] = Some(u);
                ds.union_roots(u, v);
            }
        }
    }
    (parent, ds.op_count())
}

/// Elimination forest of a possibly disconnected graph: one tree per
/// component, rooted at the component's L-minimum.
pub fn elimination_forest(g: &Graph, l: &Ordering) -> EliminationTree {
    assert_eq!(g.n(), l.len(), "ordering size must match the graph");
    EliminationTree::from_parents(scan(g, l).0).expect("scan yields a forest")
}

/// Elimination tree `S(G,L)` of a connected graph.
pub fn elimination_tree(g: &Graph, l: &Ordering) -> Result<EliminationTree> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (_, count) = component_labels(g);
    if count > 1 {
        return Err(Error::Disconnected { components: count });
    }
    Ok(elimination_forest(g, l))
}

/// Descendants of `u` in `s`, including `u`, sorted ascending.
pub fn subtree_members(s: &EliminationTree, u: Vertex) -> Vec<Vertex> {
    let mut out = s.preorder[s.tin[u]..s.tout[u]].to_vec();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EltreeViolation {
    /// The tree does not fit the graph at all.
    Structure { message: String },
    /// The subgraph induced by the subtree of `vertex` is disconnected.
    DisconnectedSubtree { vertex: Vertex },
    /// `ancestor` lies above `vertex` but is not L-smaller.
    AncestorNotSmaller { ancestor: Vertex, vertex: Vertex },
    /// Edge `u v` with `u <_L v` where `u` is not an ancestor of `v`.
    EdgeNotAncestral { u: Vertex, v: Vertex },
    /// `vertex` has no neighbour inside the subtree of its child `child`.
    ChildWithoutNeighbour { vertex: Vertex, child: Vertex },
}

impl EltreeViolation {
    /// Which of the four structural assertions this violates (0 = structure).
    pub fn assertion(&self) -> usize {
        match self {
            EltreeViolation::Structure { .. } => 0,
            EltreeViolation::DisconnectedSubtree { .. } => 1,
            EltreeViolation::AncestorNotSmaller { .. } => 2,
            EltreeViolation::EdgeNotAncestral { .. } => 3,
            EltreeViolation::ChildWithoutNeighbour { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EltreeReport {
    pub violations: Vec<EltreeViolation>,
}

impl EltreeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, assertion: usize) -> bool {
        self.violations.iter().any(|v| v.assertion() == assertion)
    }
}

/// Checks the four structural properties of an elimination tree:
///
/// 1. every subtree induces a connected subgraph;
/// 2. ancestors are L-smaller than their descendants;
/// 3. for every edge `uv` with `u <_L v`, `u` is an ancestor of `v`;
/// 4. every vertex has a neighbour inside each child's subtree.
pub fn check_eltree_properties(g: &Graph, l: &Ordering, s: &EliminationTree) -> EltreeReport {
    let mut report = EltreeReport::default();
    let n = g.n();
    if s.len() != n || l.len() != n {
        report.violations.push(EltreeViolation::Structure {
            message: format!(
                "sizes differ: graph {n}, ordering {}, tree {}",
                l.len(),
                s.len()
            ),
        });
        return report;
    }
    let (_, components) = component_labels(g);
    if s.roots().len() != components {
        report.violations.push(EltreeViolation::Structure {
            message: format!("{} roots for {components} components", s.roots().len()),
        });
    }

    // (2) suffices to check parent links; the order relation is transitive.
    for v in 0..n {
        if let Some(p) = s.parent(v) {
            if !l.less(p, v) {
                report.violations.push(EltreeViolation::AncestorNotSmaller {
                    ancestor: p,
                    vertex: v,
                });
            }
        }
    }

    // (3)
    for (a, b) in g.edges() {
        let (u, v) = if l.less(a, b) { (a, b) } else { (b, a) };
        if !s.is_ancestor(u, v) {
            report
                .violations
                .push(EltreeViolation::EdgeNotAncestral { u, v });
        }
    }

    // (4) children are sorted by preorder index, so each descendant
    // neighbour is located by binary search over child intervals.
    let mut hit = Vec::new();
    for u in 0..n {
        let kids = s.children(u);
        if kids.is_empty() {
            continue;
        }
        hit.clear();
        hit.resize(kids.len(), false);
        for &w in g.neighbors(u) {
            if w != u && s.is_ancestor(u, w) {
                let t = s.tin[w];
                let idx = kids.partition_point(|&c| s.tin[c] <= t);
                if idx > 0 {
                    hit[idx - 1] = true;
                }
            }
        }
        for (i, &c) in kids.iter().enumerate() {
            if !hit[i] {
                report
                    .violations
                    .push(EltreeViolation::ChildWithoutNeighbour {
                        vertex: u,
                        child: c,
                    });
            }
        }
    }

    // (1) Each edge joins its endpoints' lowest common ancestor's subtree.
    // Processing vertices in reverse preorder, the class of `u` after adding
    // the edges attached at `u` is exactly the component of `u` in its
    // subtree.
    let mut attached: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for (a, b) in g.edges() {
        if let Some(c) = lowest_common_ancestor(s, a, b) {
            attached[c].push((a, b));
        }
    }
    let mut ds = DisjointSets::new(n);
    for &u in s.preorder.iter().rev() {
        for &(a, b) in &attached[u] {
            ds.union_roots(a, b);
        }
        let size = ds.class_size(u).expect("in range");
        if size != s.subtree_size(u) {
            report
                .violations
                .push(EltreeViolation::DisconnectedSubtree { vertex: u });
        }
    }
    report.violations.sort_by_key(|v| v.assertion());
    report
}

fn lowest_common_ancestor(s: &EliminationTree, a: Vertex, b: Vertex) -> Option<Vertex> {
    if s.is_ancestor(a, b) {
        return Some(a);
    }
    let mut x = a;
    while let Some(p) = s.parent(x) {
        if s.is_ancestor(p, b) {
            return Some(p);
        }
        x = p;
    }
    None
}

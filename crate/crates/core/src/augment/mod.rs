//! Degree-3 spanning trees whose addition keeps admissibility bounded.
//!
//! Pipeline for a connected graph `G` with ordering `L`:
//!
//! 1. [`build_backbone`] computes the backbone `U`, a spanning tree of `G`
//!    aligned with the elimination tree `S(G,L)`.
//! 2. [`build_degree3_tree`] rewires `U`: every vertex keeps an edge to its
//!    L-smallest `U`-child only, and the children of each vertex are chained
//!    in increasing L-order. The result `T = (V, F)` has maximum degree 3.
//!    A sibling edge `xy` that is not in `G` has an *origin*: the common
//!    `U`-parent of `x` and `y`, which is `G`-adjacent to both.
//!
//! For disconnected graphs, [`augment`] runs the pipeline per component and
//! links consecutive components through vertices of degree at most one.
//!
//! Adding `F` to `G` gives `adm_r(G+F, L) <= 3 * col_{2r}(G, L)` for
//! connected `G`, and `2 + 3 * col_{2r}(G, L)` in general; see
//! [`verify_augmentation`].

mod backbone;
mod verify;

use serde::Serialize;

pub use backbone::{build_backbone, BackboneTree};
pub use verify::{
    check_structure, verify_augmentation, AdmCheck, AugmentationReport, BoundKind, StructureReport,
    Verdict,
};

use crate::error::{Error, Result};
use crate::graph::{component_labels, EdgeSet, Graph, Ordering, Vertex};

/// Why an edge is in `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
#[repr(u8)]
pub enum EdgeRole {
    /// `u x_1`: a vertex to its L-smallest backbone child.
    FirstChild,
    /// `x_i x_{i+1}`: consecutive backbone children of the owner.
    Sibling,
    /// `v_i v_{i+1}`: links two components.
    Chain,
    /// Supplied from outside; no construction metadata.
    External,
}

/// One edge of `F`, stored compactly: trees with millions of edges are
/// common inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    u: u32,
    v: u32,
    owner: u32,
    role: EdgeRole,
    in_graph: bool,
}

const NO_OWNER: u32 = u32::MAX;

impl TreeEdge {
    fn new(
        u: Vertex,
        v: Vertex,
        role: EdgeRole,
        owner: Option<Vertex>,
        in_graph: bool,
    ) -> TreeEdge {
        TreeEdge {
            u: u.min(v) as u32,
            v: u.max(v) as u32,
            owner: owner.map_or(NO_OWNER, |w| w as u32),
            role,
            in_graph,
        }
    }

    /// Smaller endpoint.
    pub fn u(&self) -> Vertex {
        self.u as Vertex
    }

    /// Larger endpoint.
    pub fn v(&self) -> Vertex {
        self.v as Vertex
    }

    pub fn role(&self) -> EdgeRole {
        self.role
    }

    /// The vertex `w` with this edge in `F_w`.
    pub fn owner(&self) -> Option<Vertex> {
        (self.owner != NO_OWNER).then_some(self.owner as Vertex)
    }

    /// Whether the edge already exists in `G`.
    pub fn in_graph(&self) -> bool {
        self.in_graph
    }
}

/// An edge of `F \ E(G)` and its origin. Chain edges have no origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NewEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub origin: Option<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub min_vertex: Vertex,
    pub size: usize,
    /// L-minimum of the component; root of its backbone.
    pub root: Vertex,
    /// L-smallest vertex of degree at most 1 in the component's tree.
    pub chain_vertex: Vertex,
}

/// The set `F`, the tree `T = (V, F)`, and the construction metadata needed
/// to check the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    n: usize,
    edges: Vec<TreeEdge>,
    backbone_parent: Option<Vec<u32>>,
    components: Vec<ComponentInfo>,
}

impl Augmentation {
    /// Wraps an arbitrary edge set as an augmentation of `g` without
    /// construction metadata. Each added edge is given the lowest-id common
    /// neighbour of its endpoints as origin, if there is one.
    pub fn from_tree_edges<I>(g: &Graph, l: &Ordering, edges: I) -> Result<Augmentation>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let set = EdgeSet::from_pairs(edges)?;
        let n = g.n();
        let mut out = Vec::with_capacity(set.len());
        for (u, v) in set.iter() {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            let in_graph = g.has_edge(u, v);
            let owner = if in_graph {
                None
            } else {
                common_neighbour(g, u, v)
            };
            out.push(TreeEdge::new(u, v, EdgeRole::External, owner, in_graph));
        }
        let (label, count) = component_labels(g);
        let label: Vec<u32> = label.into_iter().map(|c| c as u32).collect();
        let components = summarise_components(l, &out, &label, count);
        Ok(Augmentation {
            n,
            edges: out,
            backbone_parent: None,
            components,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// `F` as a pair list.
    pub fn f(&self) -> EdgeSet {
        let mut s = EdgeSet::new();
        for e in &self.edges {
            s.push_unchecked(e.u(), e.v());
        }
        s
    }

    /// `F \ E(G)` with the origin of each edge.
    pub fn f_new(&self) -> Vec<NewEdge> {
        self.edges
            .iter()
            .filter(|e| !e.in_graph())
            .map(|e| NewEdge {
                u: e.u(),
                v: e.v(),
                origin: match e.role() {
                    EdgeRole::Chain => None,
                    _ => e.owner(),
                },
            })
            .collect()
    }

    pub fn chain_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges
            .iter()
            .filter(|e| e.role() == EdgeRole::Chain)
            .map(|e| (e.u(), e.v()))
    }

    pub fn components(&self) -> &[ComponentInfo] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Whether backbone metadata is present, i.e. the augmentation was
    /// constructed here rather than wrapped.
    pub fn has_backbone(&self) -> bool {
        self.backbone_parent.is_some()
    }

    /// Parent of `v` in the backbone, when known.
    pub fn backbone_parent(&self, v: Vertex) -> Option<Vertex> {
        match self.backbone_parent.as_ref()?[v] {
            backbone::NO_PARENT => None,
            p => Some(p as Vertex),
        }
    }

    /// The tree `T = (V, F)` as a graph.
    pub fn tree(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|e| (e.u(), e.v()))).expect("edges in range")
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u()] += 1;
            deg[e.v()] += 1;
        }
        deg
    }

    /// `histogram[d]` = number of vertices of degree `d` in `T`.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let deg = self.degrees();
        let max = deg.iter().copied().max().unwrap_or(0);
        let mut h = vec![0; max + 1];
        for d in deg {
            h[d] += 1;
        }
        h
    }

    /// `G + F`.
    pub fn augmented_graph(&self, g: &Graph) -> Result<Graph> {
        let extra: Vec<_> = self
            .edges
            .iter()
            .filter(|e| !e.in_graph())
            .map(|e| (e.u(), e.v()))
            .collect();
        g.with_extra_edges(&extra)
    }

    /// Appends an arbitrary extra edge; used to build negative controls.
    pub fn inject_edge(&mut self, g: &Graph, u: Vertex, v: Vertex) {
        self.edges.push(TreeEdge::new(
            u,
            v,
            EdgeRole::External,
            None,
            g.has_edge(u, v),
        ));
    }
}

/// JSON shape of an augmentation.
#[derive(Clone, Debug, Serialize)]
pub struct AugmentationRecord<'a> {
    pub n: usize,
    pub component_count: usize,
    #[serde(rename = "F")]
    pub f: EdgeSet,
    #[serde(rename = "F_new")]
    pub f_new: Vec<NewEdge>,
    pub chain_edges: Vec<(Vertex, Vertex)>,
    pub components: &'a [ComponentInfo],
    pub degree_histogram: Vec<usize>,
    pub bound_report: Option<&'a AugmentationReport>,
}

impl Augmentation {
    pub fn record<'a>(&'a self, report: Option<&'a AugmentationReport>) -> AugmentationRecord<'a> {
        AugmentationRecord {
            n: self.n,
            component_count: self.component_count(),
            f: self.f(),
            f_new: self.f_new(),
            chain_edges: self.chain_edges().collect(),
            components: &self.components,
            degree_histogram: self.degree_histogram(),
            bound_report: report,
        }
    }
}

fn common_neighbour(g: &Graph, u: Vertex, v: Vertex) -> Option<Vertex> {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// `F_u` for every `u`, in vertex-id order of the owner.
fn degree3_edges(g: &Graph, u: &BackboneTree, l: &Ordering) -> Vec<TreeEdge> {
    let (offsets, children) = u.children_by_rank(l);
    let mut out = Vec::with_capacity(g.n().saturating_sub(1));
    for owner in 0..g.n() {
        let kids = &children[offsets[owner] as usize..offsets[owner + 1] as usize];
        let Some(&first) = kids.first() else { continue };
        let first = first as Vertex;
        out.push(TreeEdge::new(
            owner,
            first,
            EdgeRole::FirstChild,
            Some(owner),
            true,
        ));
        for w in kids.windows(2) {
            let (a, b) = (w[0] as Vertex, w[1] as Vertex);
            out.push(TreeEdge::new(
                a,
                b,
                EdgeRole::Sibling,
                Some(owner),
                g.has_edge(a, b),
            ));
        }
    }
    out
}

/// Per-component summary given the current tree edges (chain edges are not
/// counted towards degrees), sorted by minimum vertex id.
fn summarise_components(
    l: &Ordering,
    edges: &[TreeEdge],
    label: &[u32],
    count: usize,
) -> Vec<ComponentInfo> {
    const NONE: usize = usize::MAX;
    let n = label.len();
    let mut deg = vec![0u8; n];
    for e in edges.iter().filter(|e| e.role() != EdgeRole::Chain) {
        deg[e.u()] = deg[e.u()].saturating_add(1);
        deg[e.v()] = deg[e.v()].saturating_add(1);
    }
    let mut info: Vec<ComponentInfo> = vec![
        ComponentInfo {
            min_vertex: NONE,
            size: 0,
            root: NONE,
            chain_vertex: NONE,
        };
        count
    ];
    for (v, &c) in label.iter().enumerate() {
        let i = &mut info[c as usize];
        i.size += 1;
        i.min_vertex = i.min_vertex.min(v);
    }
    for &v in l.positions() {
        let i = &mut info[label[v] as usize];
        if i.root == NONE {
            i.root = v;
        }
        if i.chain_vertex == NONE && deg[v] <= 1 {
            i.chain_vertex = v;
        }
    }
    for i in &mut info {
        // A component without a degree-<=1 vertex only arises for
        // externally supplied, non-tree edge sets.
        if i.chain_vertex == NONE {
            i.chain_vertex = i.root;
        }
    }
    info.sort_unstable_by_key(|i| i.min_vertex);
    info
}

/// Builds `F` from a backbone: for each `u` with backbone children
/// `x_1 <_L ... <_L x_p`, the edges `u x_1, x_1 x_2, ..., x_{p-1} x_p`.
///
/// If `backbone` is a forest the result is a forest too; use [`augment`] to
/// get a single spanning tree.
pub fn build_degree3_tree(g: &Graph, backbone: &BackboneTree, l: &Ordering) -> Augmentation {
    assemble(g, backbone.clone(), l)
}

fn assemble(g: &Graph, backbone: BackboneTree, l: &Ordering) -> Augmentation {
    let edges = degree3_edges(g, &backbone, l);
    let count = backbone.roots().len();
    let components = summarise_components(l, &edges, backbone.component_labels(), count);
    Augmentation {
        n: g.n(),
        edges,
        backbone_parent: Some(backbone.into_raw_parents()),
        components,
    }
}

/// Full construction for any non-empty graph: per-component degree-3 trees,
/// joined by chain edges `v_1 v_2, ..., v_{p-1} v_p` between the chain
/// vertices of consecutive components (ordered by minimum vertex id).
pub fn augment(g: &Graph, l: &Ordering) -> Result<Augmentation> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if l.len() != g.n() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} vertices, graph has {}",
            l.len(),
            g.n()
        )));
    }
    let backbone = backbone::backbone_forest(g, l);
    let mut a = assemble(g, backbone, l);
    let chain: Vec<Vertex> = a.components.iter().map(|c| c.chain_vertex).collect();
    for w in chain.windows(2) {
        a.edges
            .push(TreeEdge::new(w[0], w[1], EdgeRole::Chain, None, false));
    }
    Ok(a)
}

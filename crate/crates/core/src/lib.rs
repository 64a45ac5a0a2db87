//! Low-degree spanning trees that keep generalised colouring numbers small.
//!
//! Given a graph `G` and a vertex ordering `L`, [`augment`] computes a
//! spanning tree `T = (V, F)` of maximum degree 3 such that
//! `adm_r(G + F, L) <= 2 + 3 * col_{2r}(G, L)` for every radius `r`
//! (and `3 * col_{2r}` when `G` is connected). A depth-first walk of `T`
//! visits each vertex at most three times, and the order of first visits
//! is a successor relation on `V`.
//!
//! The crate also provides the tools needed to check those claims: strong
//! reachability and colouring numbers, exact and greedy admissibility,
//! elimination trees with their structural checks, and seeded generators.
//!
//! ```
//! use lowdeg_core::{augment, generators, verify_augmentation, Ordering};
//!
//! let g = generators::figure1();
//! let l = Ordering::natural(g.n());
//! let a = augment(&g, &l).unwrap();
//! assert_eq!(a.f().len(), 22);
//! let report = verify_augmentation(&g, &l, &a, 1, Some(1_000_000));
//! assert!(report.is_ok());
//! ```

pub mod augment;
pub mod colouring;
pub mod elimination;
mod error;
pub mod generators;
pub mod graph;
pub mod successor;

pub use augment::{
    augment, build_backbone, build_degree3_tree, check_structure, verify_augmentation,
    Augmentation, AugmentationReport, BackboneTree, BoundKind, Verdict,
};
pub use colouring::{
    adm_exact, adm_graph, adm_greedy_lower, best_ordering_bruteforce, col, degeneracy_ordering,
    sreach, ColProfile, PathFamily, DEFAULT_BUDGET,
};
pub use elimination::{
    check_eltree_properties, elimination_forest, elimination_tree, subtree_members, EliminationTree,
};
pub use error::{Error, Result};
pub use graph::{connected_components, DisjointSets, EdgeSet, Graph, Ordering, Vertex};
pub use successor::{tree_to_kwalk, verify_successor, walk_to_successor, SuccessorRelation, Walk};

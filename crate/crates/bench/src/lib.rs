//! Shared fixtures for the criterion benchmarks.

use lowdeg_core::{generators, Graph, Ordering};

/// A square grid with its row-major ordering.
pub fn grid_instance(side: usize) -> (Graph, Ordering) {
    let g = generators::grid(side, side).expect("grid fits in memory");
    let l = Ordering::natural(g.n());
    (g, l)
}

/// A random graph with average degree four and a seeded random ordering.
pub fn gnm_instance(n: usize, seed: u64) -> (Graph, Ordering) {
    let g = generators::random_gnm(n, 2 * n, seed).expect("valid parameters");
    let l = Ordering::random(n, seed);
    (g, l)
}

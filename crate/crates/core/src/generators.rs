//! Deterministic graph families. The same parameters and seed always give a
//! byte-identical graph.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Edges of the 23-vertex example graph whose vertex numbers double as the
/// ordering.
pub const FIGURE1_EDGES: [(Vertex, Vertex); 24] = [
    (0, 1),
    (1, 11),
    (6, 11),
    (19, 11),
    (2, 6),
    (2, 8),
    (8, 12),
    (8, 16),
    (2, 10),
    (3, 10),
    (3, 14),
    (1, 21),
    (21, 15),
    (15, 22),
    (15, 20),
    (15, 17),
    (15, 13),
    (15, 7),
    (15, 4),
    (4, 5),
    (7, 9),
    (13, 18),
    (10, 14),
    (0, 21),
];

/// A generator family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Grid { rows: usize, cols: usize },
    Torus { rows: usize, cols: usize },
    RandomGnm { n: usize, m: usize, seed: u64 },
    RandomRegular { n: usize, d: usize, seed: u64 },
    Star { n: usize },
    Path { n: usize },
    Clique { n: usize },
    Figure1,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GeneratorSpec::Grid { rows, cols } => grid(rows, cols),
            GeneratorSpec::Torus { rows, cols } => torus(rows, cols),
            GeneratorSpec::RandomGnm { n, m, seed } => random_gnm(n, m, seed),
            GeneratorSpec::RandomRegular { n, d, seed } => random_regular(n, d, seed),
            GeneratorSpec::Star { n } => Ok(star(n)),
            GeneratorSpec::Path { n } => Ok(path(n)),
            GeneratorSpec::Clique { n } => Ok(clique(n)),
            GeneratorSpec::Figure1 => Ok(figure1()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Grid { .. } => "grid",
            GeneratorSpec::Torus { .. } => "torus",
            GeneratorSpec::RandomGnm { .. } => "random_gnm",
            GeneratorSpec::RandomRegular { .. } => "random_regular",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Clique { .. } => "clique",
            GeneratorSpec::Figure1 => "figure1",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            GeneratorSpec::RandomGnm { seed, .. } | GeneratorSpec::RandomRegular { seed, .. } => {
                Some(seed)
            }
            _ => None,
        }
    }
}

pub fn figure1() -> Graph {
    Graph::new(23, FIGURE1_EDGES).expect("static edge list")
}

/// `rows x cols` grid; vertex `(i, j)` is `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    let n = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::InvalidGenerator("grid too large".into()))?;
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::new(n, edges)
}

/// Grid with wrap-around in both directions; needs at least 3 rows and
/// columns so the result stays simple.
pub fn torus(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidGenerator(
            "torus needs rows, cols >= 3".into(),
        ));
    }
    let n = rows * cols;
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            edges.push((v, i * cols + (j + 1) % cols));
            edges.push((v, ((i + 1) % rows) * cols + j));
        }
    }
    Graph::new(n, edges)
}

/// Star with centre 0 and leaves `1..n`.
pub fn star(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (0, v))).expect("in range")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("in range")
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("in range")
}

pub fn clique(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("in range")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Uniform graph with exactly `m` edges.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m > max_edges(n) {
        return Err(Error::InvalidGenerator(format!(
            "{m} edges do not fit on {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    let edges: Vec<(Vertex, Vertex)> = if 2 * m > max_edges(n) {
        let mut all: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let (chosen, _) = all.partial_shuffle(&mut rng, m);
        chosen.to_vec()
    } else {
        let mut seen = HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let (u, v) = (below(&mut rng, n), below(&mut rng, n));
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
        edges
    };
    Graph::new(n, edges)
}

/// Connected graph with exactly `m` edges: a random spanning tree plus
/// uniformly chosen extra edges.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 || m + 1 < n || m > max_edges(n) {
        return Err(Error::InvalidGenerator(format!(
            "no connected graph with n = {n}, m = {m}"
        )));
    }
    let mut rng = rng(seed);
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let (u, v) = (label[i], label[below(&mut rng, i)]);
        seen.insert((u.min(v), u.max(v)));
        edges.push((u, v));
    }
    if 2 * m > max_edges(n) {
        let mut rest: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !seen.contains(e))
            .collect();
        let (chosen, _) = rest.partial_shuffle(&mut rng, m - edges.len());
        edges.extend_from_slice(chosen);
    } else {
        while edges.len() < m {
            let (u, v) = (below(&mut rng, n), below(&mut rng, n));
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Uniform `d`-regular graph by the pairing model with restarts.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n.max(1) || (n * d) % 2 != 0 {
        return Err(Error::InvalidGenerator(format!(
            "no {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(n * d / 2);
        let simple = stubs
            .chunks_exact(2)
            .all(|p| p[0] != p[1] && seen.insert((p[0].min(p[1]), p[0].max(p[1]))));
        if simple {
            return Graph::new(n, stubs.chunks_exact(2).map(|p| (p[0], p[1])));
        }
    }
    Err(Error::InvalidGenerator(format!(
        "pairing model did not produce a simple {d}-regular graph on {n} vertices"
    )))
}

/// Largest `n` accepted by [`connected_graphs`].
pub const CONNECTED_GRAPHS_LIMIT: usize = 7;

/// One graph from every isomorphism class of connected graphs on `n`
/// vertices, sorted by canonical code. Empty for `n = 0`.
///
/// Classes on `n` vertices are reached by adding a vertex to a connected
/// graph on `n - 1`, since every connected graph has a vertex whose removal
/// keeps it connected.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > CONNECTED_GRAPHS_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: CONNECTED_GRAPHS_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<u64> = vec![0];
    for k in 2..=n {
        let mut next = std::collections::BTreeSet::new();
        for &code in &level {
            let base = decode(k - 1, code);
            for mask in 1u32..(1 << (k - 1)) {
                let mut edges = base.clone();
                edges.extend(
                    (0..k - 1)
                        .filter(|&u| mask >> u & 1 == 1)
                        .map(|u| (u, k - 1)),
                );
                next.insert(canonical_code(k, &edges));
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level
        .into_iter()
        .map(|code| Graph::new(n, decode(n, code)).expect("in range"))
        .collect())
}

fn pair_bit(u: Vertex, v: Vertex) -> u32 {
    let (a, b) = (u.min(v), u.max(v));
    (b * (b - 1) / 2 + a) as u32
}

fn decode(n: usize, code: u64) -> Vec<(Vertex, Vertex)> {
    (1..n)
        .flat_map(|b| (0..b).map(move |a| (a, b)))
        .filter(|&(a, b)| code >> pair_bit(a, b) & 1 == 1)
        .collect()
}

/// Smallest edge bitmask over all relabellings that list vertices by
/// non-decreasing degree. That set of relabellings is isomorphism
/// invariant, so the minimum is a canonical form.
fn canonical_code(n: usize, edges: &[(Vertex, Vertex)]) -> u64 {
    use itertools::Itertools;

    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| deg[v]);
    let groups: Vec<Vec<Vertex>> = by_degree
        .chunk_by(|&a, &b| deg[a] == deg[b])
        .map(<[Vertex]>::to_vec)
        .collect();
    let starts: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let s = *acc;
            *acc += g.len();
            Some(s)
        })
        .collect();
    let mut label = vec![0; n];
    let mut best = u64::MAX;
    for choice in groups
        .iter()
        .map(|g| g.iter().copied().permutations(g.len()))
        .multi_cartesian_product()
    {
        for (perm, &start) in choice.iter().zip(&starts) {
            for (i, &v) in perm.iter().enumerate() {
                label[v] = start + i;
            }
        }
        let code = edges
            .iter()
            .fold(0u64, |acc, &(u, v)| acc | 1 << pair_bit(label[u], label[v]));
        best = best.min(code);
    }
    best
}

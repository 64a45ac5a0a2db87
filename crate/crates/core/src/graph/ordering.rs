use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Vertex;
use crate::error::{Error, Result};

/// A linear order on the vertices `0..n`.
///
/// `rank[v]` is the position of `v`; `position[p]` is the vertex at `p`.
/// `u <_L v` iff `rank[u] < rank[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordering {
    rank: Vec<usize>,
    position: Vec<Vertex>,
}

impl Ordering {
    /// The identity order `0 < 1 < ... < n-1`.
    pub fn natural(n: usize) -> Ordering {
        Ordering {
            rank: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// A uniformly random order drawn from a seeded ChaCha stream.
    pub fn random(n: usize, seed: u64) -> Ordering {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut position: Vec<Vertex> = (0..n).collect();
        position.shuffle(&mut rng);
        Self::from_positions(position).expect("shuffle is a permutation")
    }

    /// Builds an order from the vertex sequence, smallest first.
    pub fn from_positions(position: Vec<Vertex>) -> Result<Ordering> {
        let n = position.len();
        let mut rank = vec![usize::MAX; n];
        for (p, &v) in position.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range for n = {n}"
                )));
            }
            if rank[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            rank[v] = p;
        }
        Ok(Ordering { rank, position })
    }

    /// Builds an order from the rank of each vertex.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Ordering> {
        let n = rank.len();
        let mut position = vec![usize::MAX; n];
        for (v, &p) in rank.iter().enumerate() {
            if p >= n || position[p] != usize::MAX {
                return Err(Error::InvalidOrdering(format!(
                    "rank {p} of vertex {v} invalid or repeated"
                )));
            }
            position[p] = v;
        }
        Ok(Ordering { rank, position })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    #[inline]
    pub fn vertex_at(&self, p: usize) -> Vertex {
        self.position[p]
    }

    #[inline]
    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.rank[u] < self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices from smallest to largest.
    pub fn positions(&self) -> &[Vertex] {
        &self.position
    }

    /// The L-minimum of a non-empty vertex set.
    pub fn min_of<I: IntoIterator<Item = Vertex>>(&self, vs: I) -> Option<Vertex> {
        vs.into_iter().min_by_key(|&v| self.rank[v])
    }
}

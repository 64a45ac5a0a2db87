use super::Vertex;
use crate::error::{Error, Result};

/// Disjoint-set forest with path compression and union by size.
///
/// Every class also carries the member with the smallest key. With the
/// default keys (the vertex ids) that is the smallest member; with
/// [`DisjointSets::keyed`] on an ordering's ranks it is the L-minimum.
///
/// Links are stored as `u32`, so at most `u32::MAX` elements are supported.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    min_member: Vec<u32>,
    /// `None` means every element is its own key.
    key: Option<Vec<usize>>,
    ops: u64,
}

impl DisjointSets {
    pub fn new(n: usize) -> DisjointSets {
        Self::build(n, None)
    }

    /// One singleton per key; `key[v]` decides which member represents the
    /// class minimum.
    pub fn keyed(key: Vec<usize>) -> DisjointSets {
        Self::build(key.len(), Some(key))
    }

    fn build(n: usize, key: Option<Vec<usize>>) -> DisjointSets {
        assert!(
            u32::try_from(n).is_ok(),
            "DisjointSets supports at most u32::MAX elements"
        );
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            min_member: (0..n as u32).collect(),
            key,
            ops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of `find`/`union` calls made so far.
    pub fn op_count(&self) -> u64 {
        self.ops
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v >= self.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.len(),
            });
        }
        Ok(())
    }

    pub fn find(&mut self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        Ok(self.find_root(v))
    }

    /// Merges the classes of `u` and `v`; `false` if they were already one.
    pub fn union(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.union_roots(u, v))
    }

    /// Smallest-key member of the class containing `v`.
    pub fn class_min(&mut self, v: Vertex) -> Result<Vertex> {
        let r = self.find(v)?;
        Ok(self.min_of_root(r))
    }

    /// Number of members in the class containing `v`.
    pub fn class_size(&mut self, v: Vertex) -> Result<usize> {
        let r = self.find(v)?;
        Ok(self.size[r] as usize)
    }

    pub(crate) fn find_root(&mut self, v: Vertex) -> usize {
        self.ops += 1;
        self.root(v as u32) as usize
    }

    fn root(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = v;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    pub(crate) fn min_of_root(&self, root: usize) -> Vertex {
        self.min_member[root] as Vertex
    }

    fn less(&self, a: u32, b: u32) -> bool {
        match &self.key {
            Some(key) => key[a as usize] < key[b as usize],
            None => a < b,
        }
    }

    pub(crate) fn union_roots(&mut self, u: Vertex, v: Vertex) -> bool {
        self.ops += 1;
        let mut a = self.root(u as u32);
        let mut b = self.root(v as u32);
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        let (a, b) = (a as usize, b as usize);
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        if self.less(self.min_member[b], self.min_member[a]) {
            self.min_member[a] = self.min_member[b];
        }
        true
    }
}

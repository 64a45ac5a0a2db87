use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::ReachScratch;
use crate::error::{Error, Result};
use crate::graph::{Graph, Ordering, Vertex};

/// Search-node budget used when the caller has no better idea.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Paths leaving `start`, each a certificate for one unit of admissibility.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    pub start: Vertex,
    pub radius: usize,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks that every path is a valid admissibility path in `g` and the
    /// paths only share `start`.
    pub fn validate(&self, g: &Graph, l: &Ordering) -> std::result::Result<(), String> {
        let v = self.start;
        let mut owner: HashMap<Vertex, usize> = HashMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != Some(&v) {
                return Err(format!("path {i} does not start at {v}"));
            }
            if p.len() < 2 || p.len() - 1 > self.radius {
                return Err(format!(
                    "path {i} has length {} outside 1..={}",
                    p.len().saturating_sub(1),
                    self.radius
                ));
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {i} uses non-edge {}-{}", w[0], w[1]));
                }
            }
            let end = *p.last().unwrap();
            if !l.less(end, v) {
                return Err(format!("path {i} ends at {end}, which is not below {v}"));
            }
            for &x in &p[1..p.len() - 1] {
                if !l.less(v, x) {
                    return Err(format!("path {i} has internal vertex {x} not above {v}"));
                }
            }
            for &x in &p[1..] {
                if let Some(j) = owner.insert(x, i) {
                    return Err(format!("paths {j} and {i} share vertex {x}"));
                }
            }
        }
        Ok(())
    }
}

/// Graph-level admissibility: the value, where it is attained, and a
/// certificate family at that vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmResult {
    pub value: usize,
    pub vertex: Option<Vertex>,
    pub exact: bool,
    pub family: Option<PathFamily>,
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Inexact { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

fn enumerate_paths(
    g: &Graph,
    l: &Ordering,
    v: Vertex,
    r: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<Vertex>>> {
    fn go(
        g: &Graph,
        l: &Ordering,
        rv: usize,
        r: usize,
        path: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            let rw = l.rank(w);
            if rw < rv {
                path.push(w);
                out.push(path.clone());
                path.pop();
            } else if rw > rv && path.len() < r && !path.contains(&w) {
                path.push(w);
                go(g, l, rv, r, path, out, budget)?;
                path.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    if r > 0 {
        go(g, l, l.rank(v), r, &mut vec![v], &mut out, budget)?;
    }
    Ok(out)
}

/// Every path of length `1..=r` from `v` that ends below `v` in `L` and
/// whose internal vertices are all above `v`.
pub fn valid_paths(
    g: &Graph,
    l: &Ordering,
    v: Vertex,
    r: usize,
    budget: u64,
) -> Result<Vec<Vec<Vertex>>> {
    enumerate_paths(g, l, v, r, &mut Budget::new(budget))
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(words: usize) -> Self {
        Bits(vec![0; words])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn disjoint(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == 0)
    }
    fn or_assign(&mut self, o: &Bits) {
        self.0.iter_mut().zip(&o.0).for_each(|(a, b)| *a |= b);
    }
    fn andnot_assign(&mut self, o: &Bits) {
        self.0.iter_mut().zip(&o.0).for_each(|(a, b)| *a &= !b);
    }
    fn count_andnot(&self, o: &Bits) -> usize {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }
}

struct Packer<'a> {
    masks: Vec<Bits>,
    groups: Vec<Vec<usize>>,
    first_hops: Bits,
    best: Vec<usize>,
    budget: &'a mut Budget,
}

impl Packer<'_> {
    fn search(&mut self, gi: usize, used: &mut Bits, chosen: &mut Vec<usize>) -> Result<()> {
        self.budget.tick()?;
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if gi == self.groups.len() {
            return Ok(());
        }
        // Every path needs its own endpoint and its own first hop.
        let remaining = self.groups.len() - gi;
        let hops = self.first_hops.count_andnot(used);
        if chosen.len() + remaining.min(hops) <= self.best.len() {
            return Ok(());
        }
        for k in 0..self.groups[gi].len() {
            let p = self.groups[gi][k];
            if self.masks[p].disjoint(used) {
                let mask = self.masks[p].clone();
                used.or_assign(&mask);
                chosen.push(p);
                self.search(gi + 1, used, chosen)?;
                chosen.pop();
                used.andnot_assign(&mask);
            }
        }
        self.search(gi + 1, used, chosen)
    }
}

fn pack(paths: &[Vec<Vertex>], budget: &mut Budget) -> Result<Vec<usize>> {
    let mut local: HashMap<Vertex, usize> = HashMap::new();
    for p in paths {
        for &x in &p[1..] {
            let next = local.len();
            local.entry(x).or_insert(next);
        }
    }
    let words = local.len().div_ceil(64).max(1);
    let mut first_hops = Bits::zero(words);
    let masks: Vec<Bits> = paths
        .iter()
        .map(|p| {
            let mut b = Bits::zero(words);
            for x in &p[1..] {
                b.set(local[x]);
            }
            if p.len() > 1 {
                first_hops.set(local[&p[1]]);
            }
            b
        })
        .collect();

    let mut by_end: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        by_end.entry(*p.last().unwrap()).or_default().push(i);
    }
    let mut groups: Vec<(Vertex, Vec<usize>)> = by_end.into_iter().collect();
    for (_, g) in groups.iter_mut() {
        g.sort_by(|&a, &b| {
            paths[a]
                .len()
                .cmp(&paths[b].len())
                .then_with(|| paths[a].cmp(&paths[b]))
        });
    }
    groups.sort_by_key(|(end, g)| (g.len(), *end));

    let mut packer = Packer {
        masks,
        groups: groups.into_iter().map(|(_, g)| g).collect(),
        first_hops,
        best: Vec::new(),
        budget,
    };
    packer.search(0, &mut Bits::zero(words), &mut Vec::new())?;
    let mut best = packer.best;
    best.sort_unstable();
    Ok(best)
}

/// Maximum number of paths pairwise disjoint apart from their shared first
/// vertex. Returns the indices of one optimal selection.
pub fn max_disjoint_packing(paths: &[Vec<Vertex>], budget: u64) -> Result<Vec<usize>> {
    pack(paths, &mut Budget::new(budget))
}

/// Exact `adm_r[G,L,v]` by enumerating every valid path and solving the
/// packing by branch and bound. Fails with [`Error::Inexact`] when the
/// search needs more than `budget` nodes.
pub fn adm_exact(
    g: &Graph,
    l: &Ordering,
    v: Vertex,
    r: usize,
    budget: u64,
) -> Result<(usize, PathFamily)> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let mut budget = Budget::new(budget);
    let paths = enumerate_paths(g, l, v, r, &mut budget)?;
    let chosen = pack(&paths, &mut budget)?;
    let family = PathFamily {
        start: v,
        radius: r,
        paths: chosen.into_iter().map(|i| paths[i].clone()).collect(),
    };
    Ok((family.len(), family))
}

/// Exact `adm_r(G,L)`; the budget applies to each vertex separately.
pub fn adm_graph(g: &Graph, l: &Ordering, r: usize, budget: u64) -> Result<AdmResult> {
    let mut scratch = ReachScratch::new(g.n());
    let mut buf = Vec::new();
    let mut best = AdmResult {
        value: 0,
        vertex: None,
        exact: true,
        family: None,
    };
    for v in 0..g.n() {
        // adm_r[v] <= |SReach_r[v]| - 1, so most vertices never need a search.
        buf.clear();
        scratch.sreach_into(g, l, v, r, &mut buf);
        let upper = buf.len() - 1;
        if best.vertex.is_some() && upper <= best.value {
            continue;
        }
        let (value, family) = adm_exact(g, l, v, r, budget)?;
        if best.vertex.is_none() || value > best.value {
            best.value = value;
            best.vertex = Some(v);
            best.family = Some(family);
        }
    }
    Ok(best)
}

/// Lower bound on `adm_r[G,L,v]`: repeatedly take a shortest valid path
/// avoiding everything already used, lowest endpoint id first.
pub fn adm_greedy_lower(g: &Graph, l: &Ordering, v: Vertex, r: usize) -> (usize, PathFamily) {
    let rv = l.rank(v);
    let mut used = vec![false; g.n()];
    used[v] = true;
    let mut family = PathFamily {
        start: v,
        radius: r,
        paths: Vec::new(),
    };
    let mut pred = vec![usize::MAX; g.n()];
    let mut seen_epoch = vec![0u32; g.n()];
    let mut epoch = 0u32;
    loop {
        epoch += 1;
        seen_epoch[v] = epoch;
        let mut frontier = vec![v];
        let mut found = None;
        for _ in 0..r {
            let mut next = Vec::new();
            let mut ends = Vec::new();
            for &x in &frontier {
                for &y in g.neighbors(x) {
                    if used[y] || seen_epoch[y] == epoch {
                        continue;
                    }
                    seen_epoch[y] = epoch;
                    pred[y] = x;
                    if l.rank(y) < rv {
                        ends.push(y);
                    } else {
                        next.push(y);
                    }
                }
            }
            if let Some(&end) = ends.iter().min() {
                found = Some(end);
                break;
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let Some(end) = found else { break };
        let mut path = vec![end];
        let mut x = end;
        while x != v {
            x = pred[x];
            path.push(x);
        }
        path.reverse();
        for &x in &path[1..] {
            used[x] = true;
        }
        family.paths.push(path);
    }
    (family.len(), family)
}

/// Greedy lower bound on `adm_r(G,L)`, maximised over all vertices.
pub fn adm_graph_greedy(g: &Graph, l: &Ordering, r: usize) -> AdmResult {
    let mut best = AdmResult {
        value: 0,
        vertex: None,
        exact: false,
        family: None,
    };
    for v in 0..g.n() {
        let (value, family) = adm_greedy_lower(g, l, v, r);
        if best.vertex.is_none() || value > best.value {
            best.value = value;
            best.vertex = Some(v);
            best.family = Some(family);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::oracle::all_simple_paths;
    use super::super::{col, sreach};
    use super::*;
    use crate::generators;

    /// Independent packing oracle: try every subset of valid paths.
    fn adm_by_subsets(g: &Graph, l: &Ordering, v: Vertex, r: usize) -> usize {
        let paths: Vec<_> = all_simple_paths(g, v, r)
            .into_iter()
            .filter(|p| {
                let end = *p.last().unwrap();
                l.less(end, v) && p[1..p.len() - 1].iter().all(|&x| l.less(v, x))
            })
            .collect();
        assert!(paths.len() <= 20, "oracle limited to 20 paths");
        let mut best = 0;
        for mask in 0u32..(1 << paths.len()) {
            let chosen: Vec<_> = (0..paths.len()).filter(|i| mask >> i & 1 == 1).collect();
            let mut seen = std::collections::HashSet::new();
            let ok = chosen
                .iter()
                .all(|&i| paths[i][1..].iter().all(|x| seen.insert(*x)));
            if ok {
                best = best.max(chosen.len());
            }
        }
        best
    }

    fn star_centre_last() -> (Graph, Ordering) {
        (
            generators::star(4),
            Ordering::from_positions(vec![1, 2, 3, 0]).unwrap(),
        )
    }

    #[test]
    fn star_centre_last_admits_three() {
        let (g, l) = star_centre_last();
        let (value, fam) = adm_exact(&g, &l, 0, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(value, 3);
        assert_eq!(fam.paths, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        fam.validate(&g, &l).unwrap();
        assert_eq!(adm_by_subsets(&g, &l, 0, 1), 3);
        let (greedy, gf) = adm_greedy_lower(&g, &l, 0, 1);
        assert_eq!(greedy, 3);
        gf.validate(&g, &l).unwrap();
    }

    #[test]
    fn minimum_vertex_admits_nothing() {
        let g = generators::random_gnm(9, 20, 2).unwrap();
        let l = Ordering::random(9, 3);
        let min = l.vertex_at(0);
        for r in 0..4 {
            assert_eq!(adm_exact(&g, &l, min, r, DEFAULT_BUDGET).unwrap().0, 0);
            assert_eq!(adm_greedy_lower(&g, &l, min, r).0, 0);
        }
    }

    #[test]
    fn clique_examples() {
        let k4 = generators::clique(4);
        let l = Ordering::natural(4);
        assert_eq!(adm_exact(&k4, &l, 3, 1, DEFAULT_BUDGET).unwrap().0, 3);
        assert_eq!(adm_by_subsets(&k4, &l, 3, 1), 3);
        assert_eq!(adm_graph(&k4, &l, 1, DEFAULT_BUDGET).unwrap().value, 3);
    }

    #[test]
    fn graph_level_examples() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let res = adm_graph(&p3, &Ordering::natural(3), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(res.value, 1);
        assert_eq!(res.vertex, Some(1));
        let empty = adm_graph(&Graph::empty(5), &Ordering::natural(5), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(empty.value, 0);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = generators::clique(9);
        let l = Ordering::natural(9);
        assert_eq!(
            adm_exact(&g, &l, 8, 3, 10),
            Err(Error::Inexact { budget: 10 })
        );
        assert!(adm_graph(&g, &l, 3, 10).is_err());
    }

    #[test]
    fn exact_matches_subset_oracle() {
        let mut checked = 0;
        for seed in 0..150u64 {
            let n = 4 + (seed as usize % 6);
            let m = (seed as usize * 5 + 3) % (n * (n - 1) / 2 + 1);
            let g = generators::random_gnm(n, m, seed).unwrap();
            let l = Ordering::random(n, seed ^ 0x55);
            for r in 1..=2 {
                for v in 0..n {
                    let count = all_simple_paths(&g, v, r).len();
                    if count > 20 {
                        continue;
                    }
                    let (value, fam) = adm_exact(&g, &l, v, r, DEFAULT_BUDGET).unwrap();
                    fam.validate(&g, &l).unwrap();
                    assert_eq!(
                        value,
                        adm_by_subsets(&g, &l, v, r),
                        "seed {seed} v {v} r {r}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn greedy_never_beats_exact() {
        for seed in 0..100u64 {
            let n = 5 + (seed as usize % 8);
            let m = (seed as usize * 3 + n) % (n * (n - 1) / 2 + 1);
            let g = generators::random_gnm(n, m, seed + 7).unwrap();
            let l = Ordering::random(n, seed);
            for r in 1..=3 {
                for v in 0..n {
                    let (lower, fam) = adm_greedy_lower(&g, &l, v, r);
                    fam.validate(&g, &l).unwrap();
                    let (exact, _) = adm_exact(&g, &l, v, r, DEFAULT_BUDGET).unwrap();
                    assert!(lower <= exact);
                }
            }
        }
    }

    #[test]
    fn adm_bounded_by_reach() {
        for seed in 0..40u64 {
            let n = 9;
            let g = generators::random_gnm(n, 6 + seed as usize % 20, seed).unwrap();
            let l = Ordering::random(n, seed * 31);
            for r in 1..=3 {
                let c = col(&g, &l, r);
                let a = adm_graph(&g, &l, r, DEFAULT_BUDGET).unwrap();
                assert!(a.value <= c.value);
                for v in 0..n {
                    let av = adm_exact(&g, &l, v, r, DEFAULT_BUDGET).unwrap().0;
                    assert!(av < sreach(&g, &l, v, r).len());
                }
            }
        }
    }

    #[test]
    fn packing_respects_shared_start_only() {
        // Two paths from 0 meeting at 3 cannot both be used.
        let paths = vec![vec![0, 1, 3], vec![0, 2, 3], vec![0, 4]];
        let chosen = max_disjoint_packing(&paths, 1000).unwrap();
        assert_eq!(chosen.len(), 2);
        assert!(chosen.contains(&2));
    }

    #[test]
    fn rejects_invalid_families() {
        let (g, l) = star_centre_last();
        let bad = PathFamily {
            start: 0,
            radius: 1,
            paths: vec![vec![0, 1], vec![0, 1]],
        };
        assert!(bad.validate(&g, &l).is_err());
        let wrong_end = PathFamily {
            start: 1,
            radius: 1,
            paths: vec![vec![1, 0]],
        };
        assert!(wrong_end.validate(&g, &l).is_err());
    }
}

//! Dual graphs and strong connectivity of pure face sets.

use std::collections::HashMap;

use super::complex::FacetSet;
use super::face::{faces_of_dim, Face};
use super::union_find::UnionFind;
use crate::error::{Error, Result};
use crate::int::Int;

/// Largest vertex count accepted by [`enumerate_strongly_connected`].
pub const ENUM_MAX_N: usize = 8;
/// Largest set size accepted by [`enumerate_strongly_connected`].
pub const ENUM_MAX_K: usize = 6;

/// Graph on equidimensional faces; `σ ~ τ` iff they share a codimension-one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<Face>,
    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Breadth-first reachability from node 0.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn common_dim(faces: &[Face]) -> Result<Option<usize>> {
    let mut dim = None;
    for f in faces {
        if f.is_empty() {
            return Err(Error::MixedDimensions);
        }
        match dim {
            None => dim = Some(f.dim()),
            Some(d) if d != f.dim() => return Err(Error::MixedDimensions),
            _ => {}
        }
    }
    Ok(dim)
}

/// Builds the dual graph; nodes are sorted in colex order.
pub fn dual_graph(faces: &[Face]) -> Result<DualGraph> {
    common_dim(faces)?;
    let mut nodes = faces.to_vec();
    nodes.sort();
    nodes.dedup();
    let mut buckets: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in nodes.iter().enumerate() {
        for (_, r) in f.boundary() {
            buckets.entry(r).or_default().push(i);
        }
    }
    // two distinct faces of equal dimension share at most one codim-1 face
    let mut edges = Vec::new();
    for members in buckets.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges.sort_unstable();
    Ok(DualGraph { nodes, edges })
}

/// Strong connectivity of an arbitrary nonempty equidimensional face list.
pub fn faces_strongly_connected(faces: &[Face]) -> Result<bool> {
    if faces.is_empty() {
        return Err(Error::EmptyInput);
    }
    common_dim(faces)?;
    let mut faces = faces.to_vec();
    faces.sort();
    faces.dedup();
    let mut uf = UnionFind::new(faces.len());
    let mut first: HashMap<Face, usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (_, r) in f.boundary() {
            match first.get(&r) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    first.insert(r, i);
                }
            }
        }
    }
    Ok(uf.components() == 1)
}

pub fn is_strongly_connected(set: &FacetSet) -> Result<bool> {
    faces_strongly_connected(&set.to_vec())
}

/// The upper bound `n^(d+k-1) (2d)^k` on the number of strongly connected
/// sets of `k` faces of dimension `d - 1` on `n` vertices.
pub fn strong_count_bound(n: usize, d: usize, k: usize) -> Int {
    let base = Int::from(n as u64).pow((d + k - 1) as u32);
    &base * &Int::from((2 * d) as u64).pow(k as u32)
}

/// Every strongly connected set of `k` faces of dimension `facet_dim` on `n`
/// vertices, each exactly once.
///
/// Sets are produced in increasing order of their sorted colex-rank vectors.
/// Exhaustive enumeration is exponential, so `n <= 8` and `k <= 6` are
/// enforced.
pub fn enumerate_strongly_connected(n: usize, facet_dim: usize, k: usize) -> Result<StronglyConnectedSets> {
    if n > ENUM_MAX_N || k > ENUM_MAX_K {
        return Err(Error::CapExceeded(format!(
            "exhaustive enumeration limited to n <= {ENUM_MAX_N}, k <= {ENUM_MAX_K} (got n = {n}, k = {k})"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("set size must be positive".into()));
    }
    let faces: Vec<Face> = faces_of_dim(n, facet_dim).collect();
    let graph = dual_graph(&faces)?;
    let m = faces.len();
    let mut adjacent = vec![vec![false; m]; m];
    for &(i, j) in &graph.edges {
        adjacent[i][j] = true;
        adjacent[j][i] = true;
    }
    Ok(StronglyConnectedSets { n, facet_dim, k, faces, adj: graph.neighbors(), adjacent, root: 0, batch: Vec::new() })
}

pub struct StronglyConnectedSets {
    n: usize,
    facet_dim: usize,
    k: usize,
    faces: Vec<Face>,
    adj: Vec<Vec<usize>>,
    adjacent: Vec<Vec<bool>>,
    root: usize,
    // reversed, so `pop` yields ascending order
    batch: Vec<Vec<usize>>,
}

impl StronglyConnectedSets {
    // ESU extension step: grows `sub` only through vertices exclusive to the
    // newest member, which makes every connected set reachable exactly once.
    fn extend(&self, sub: &mut Vec<usize>, mut ext: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if sub.len() == self.k {
            let mut s = sub.clone();
            s.sort_unstable();
            out.push(s);
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for &u in &self.adj[w] {
                if u > self.root && !sub.contains(&u) && !sub.iter().any(|&s| self.adjacent[s][u]) {
                    next_ext.push(u);
                }
            }
            sub.push(w);
            self.extend(sub, next_ext, out);
            sub.pop();
        }
    }

    fn fill_batch(&mut self) {
        while self.batch.is_empty() && self.root < self.faces.len() {
            let mut out = Vec::new();
            let ext: Vec<usize> = self.adj[self.root].iter().copied().filter(|&u| u > self.root).collect();
            let mut sub = vec![self.root];
            self.extend(&mut sub, ext, &mut out);
            out.sort_unstable();
            out.reverse();
            self.batch = out;
            self.root += 1;
        }
    }
}

impl Iterator for StronglyConnectedSets {
    type Item = FacetSet;

    fn next(&mut self) -> Option<FacetSet> {
        self.fill_batch();
        let idx = self.batch.pop()?;
        let facets = idx.into_iter().map(|i| self.faces[i].clone());
        Some(FacetSet::new(self.n, self.facet_dim, facets).expect("enumerated faces are valid"))
    }
}

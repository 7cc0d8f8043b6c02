use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// A simplex given by its strictly increasing vertex list.
///
/// Faces of equal dimension are ordered colexicographically (largest vertex
/// first); faces of smaller dimension sort before larger ones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Face {
    vertices: Vec<u32>,
}

impl Face {
    pub fn new(vertices: Vec<u32>) -> Result<Face> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonCanonicalFace(vertices));
        }
        Ok(Face { vertices })
    }

    /// Sorts and deduplicates-checks an arbitrary vertex list.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Face> {
        vertices.sort_unstable();
        Face::new(vertices)
    }

    /// The empty face, of dimension -1.
    pub fn empty() -> Face {
        Face { vertices: Vec::new() }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension, i.e. vertex count minus one. Panics on the empty face.
    pub fn dim(&self) -> usize {
        self.vertices.len().checked_sub(1).expect("empty face has dimension -1")
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> Option<u32> {
        self.vertices.last().copied()
    }

    /// Codimension-one faces with their incidence signs: removing the vertex
    /// at position `i` carries sign `(-1)^i`.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Face)> + '_ {
        (0..self.vertices.len()).map(move |i| {
            let mut v = self.vertices.clone();
            v.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (sign, Face { vertices: v })
        })
    }

    /// Like [`Face::boundary`], but yields colex ranks instead of faces.
    pub fn boundary_ranks(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let v = &self.vertices;
        // rank of v minus position i: entries after i drop one position
        let full: Vec<u64> = v.iter().enumerate().map(|(j, &x)| binomial(x as usize, j + 1)).collect();
        let shifted: Vec<u64> = v.iter().enumerate().map(|(j, &x)| binomial(x as usize, j)).collect();
        let mut suffix = vec![0u64; v.len() + 1];
        for j in (0..v.len()).rev() {
            suffix[j] = suffix[j + 1] + shifted[j];
        }
        let mut prefix = 0u64;
        (0..v.len()).map(move |i| {
            let r = prefix + suffix[i + 1];
            prefix += full[i];
            (if i % 2 == 0 { 1 } else { -1 }, r)
        })
    }

    /// The face obtained by adding vertex `v`, together with the sign of
    /// `self` in the boundary of the result. `None` if `v` is already present.
    pub fn cone(&self, v: u32) -> Option<(i64, Face)> {
        match self.vertices.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.vertices.clone();
                out.insert(pos, v);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, Face { vertices: out }))
            }
        }
    }

    pub fn intersection_len(&self, other: &Face) -> usize {
        let (mut i, mut j, mut c) = (0, 0, 0);
        let (a, b) = (&self.vertices, &other.vertices);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.intersection_len(other) == self.len()
    }

    /// Colexicographic rank among faces of the same dimension on `n` vertices.
    pub fn rank(&self, n: usize) -> Result<u64> {
        face_rank(self, n)
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.vertices.last() {
            Some(&v) if v as usize >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

/// Colexicographic rank: `sum_i C(v_i, i + 1)` over the sorted vertices.
/// This is a bijection from dimension-`k` faces on `n` vertices onto
/// `[0, C(n, k + 1))`.
pub fn face_rank(f: &Face, n: usize) -> Result<u64> {
    f.check_range(n)?;
    Ok(colex_rank(f.vertices()))
}

pub(crate) fn colex_rank(vertices: &[u32]) -> u64 {
    vertices.iter().enumerate().map(|(i, &v)| binomial(v as usize, i + 1)).sum()
}

/// Inverse of [`face_rank`].
pub fn face_unrank(mut rank: u64, dim: usize, n: usize) -> Result<Face> {
    let k = dim + 1;
    let total = binomial(n, k);
    if rank >= total {
        return Err(Error::OutOfRange { index: rank as usize, limit: total as usize });
    }
    let mut out = vec![0u32; k];
    let mut hi = n;
    for i in (0..k).rev() {
        // largest v < hi with C(v, i + 1) <= rank
        let mut v = hi - 1;
        while binomial(v, i + 1) > rank {
            v -= 1;
        }
        out[i] = v as u32;
        rank -= binomial(v, i + 1);
        hi = v;
    }
    Ok(Face { vertices: out })
}

/// All faces of dimension `dim` on `n` vertices, in colex order.
pub fn faces_of_dim(n: usize, dim: usize) -> Faces {
    let k = dim + 1;
    Faces { n, current: if k <= n { Some((0..k as u32).collect()) } else { None } }
}

pub struct Faces {
    n: usize,
    current: Option<Vec<u32>>,
}

impl Iterator for Faces {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        // colex successor: bump the lowest position that can move up
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            let limit = if i + 1 < k { next[i + 1] } else { self.n as u32 };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j as u32;
                }
                self.current = Some(next);
                break;
            }
            i += 1;
        }
        if k == 0 {
            self.current = None;
        }
        Some(Face { vertices: cur })
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.iter().rev().cmp(other.vertices.iter().rev()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        Face::new(v).map_err(serde::de::Error::custom)
    }
}

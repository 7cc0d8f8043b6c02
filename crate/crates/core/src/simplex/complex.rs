use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::face::{binomial, faces_of_dim, Face};
use crate::error::{Error, Result};

/// A `d`-complex on `n` vertices with complete `(d-1)`-skeleton.
///
/// Only the top-dimensional faces are stored; every face of dimension below
/// `d` is implicitly present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct Complex {
    n: usize,
    d: usize,
    faces: BTreeSet<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    n: usize,
    d: usize,
    faces: Vec<Face>,
}

impl TryFrom<ComplexRepr> for Complex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Complex> {
        let mut c = Complex::empty(r.n, r.d)?;
        for f in r.faces {
            if !c.insert(f.clone())? {
                return Err(Error::Malformed(format!("duplicate face {f:?}")));
            }
        }
        Ok(c)
    }
}

impl From<Complex> for ComplexRepr {
    fn from(c: Complex) -> ComplexRepr {
        ComplexRepr { n: c.n, d: c.d, faces: c.faces.into_iter().collect() }
    }
}

impl Complex {
    /// The complete `(d-1)`-complex: no `d`-faces.
    pub fn empty(n: usize, d: usize) -> Result<Complex> {
        if d < 1 {
            return Err(Error::InvalidParameter("top dimension must be at least 1".into()));
        }
        if n < d + 1 {
            return Err(Error::InvalidParameter(format!(
                "need at least {} vertices for dimension {d}, got {n}",
                d + 1
            )));
        }
        Ok(Complex { n, d, faces: BTreeSet::new() })
    }

    pub fn from_faces(n: usize, d: usize, faces: impl IntoIterator<Item = Face>) -> Result<Complex> {
        let mut c = Complex::empty(n, d)?;
        for f in faces {
            c.insert(f)?;
        }
        Ok(c)
    }

    /// Every `d`-face of the simplex on `n` vertices.
    pub fn full_skeleton(n: usize, d: usize) -> Result<Complex> {
        let mut c = Complex::empty(n, d)?;
        c.faces.extend(faces_of_dim(n, d));
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Inserts a `d`-face; returns `false` if it was already present.
    pub fn insert(&mut self, f: Face) -> Result<bool> {
        if f.is_empty() || f.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: f.len().wrapping_sub(1) });
        }
        f.check_range(self.n)?;
        Ok(self.faces.insert(f))
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Top faces in colex order.
    pub fn faces(&self) -> impl ExactSizeIterator<Item = &Face> + Clone {
        self.faces.iter()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_facets(&self) -> u64 {
        binomial(self.n, self.d)
    }

    /// Number of top faces containing each covered facet.
    pub fn coverage(&self) -> HashMap<Face, usize> {
        let mut cov = HashMap::new();
        for f in &self.faces {
            for (_, g) in f.boundary() {
                *cov.entry(g).or_insert(0) += 1;
            }
        }
        cov
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.n == other.n && self.d == other.d && self.faces.is_subset(&other.faces)
    }
}

/// A set of `(d-1)`-faces, as used for cochain supports and isolated facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FacetSet {
    n: usize,
    dim: usize,
    facets: BTreeSet<Face>,
}

impl FacetSet {
    pub fn new(n: usize, dim: usize, facets: impl IntoIterator<Item = Face>) -> Result<FacetSet> {
        let mut set = BTreeSet::new();
        for f in facets {
            if f.is_empty() || f.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.len().wrapping_sub(1) });
            }
            f.check_range(n)?;
            if !set.insert(f.clone()) {
                return Err(Error::Malformed(format!("duplicate facet {f:?}")));
            }
        }
        Ok(FacetSet { n, dim, facets: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the member faces.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Face> + Clone {
        self.facets.iter()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.facets.contains(f)
    }

    pub fn to_vec(&self) -> Vec<Face> {
        self.facets.iter().cloned().collect()
    }
}

/// Facets of `y` contained in no top face.
pub fn isolated_facets(y: &Complex) -> FacetSet {
    let covered: HashSet<Face> = y.faces().flat_map(|f| f.boundary().map(|(_, g)| g)).collect();
    let facets = faces_of_dim(y.n(), y.d() - 1).filter(|f| !covered.contains(f));
    FacetSet { n: y.n(), dim: y.d() - 1, facets: facets.collect() }
}

/// Unordered pairs of isolated facets that meet in a ridge. Requires `d >= 2`.
pub fn isolated_pairs_sharing_ridge(y: &Complex) -> Result<Vec<(Face, Face)>> {
    if y.d() < 2 {
        return Err(Error::InvalidParameter("ridges need top dimension at least 2".into()));
    }
    Ok(adjacent_pairs(&isolated_facets(y)))
}

/// Pairs of members meeting in a codimension-one face, sorted. For 0-faces
/// the shared face is empty, so all pairs qualify.
pub(crate) fn adjacent_pairs(set: &FacetSet) -> Vec<(Face, Face)> {
    let mut buckets: HashMap<Face, Vec<&Face>> = HashMap::new();
    for f in set.iter() {
        for (_, r) in f.boundary() {
            buckets.entry(r).or_default().push(f);
        }
    }
    let mut pairs = Vec::new();
    for members in buckets.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                pairs.push(((*lo).clone(), (*hi).clone()));
            }
        }
    }
    pairs.sort();
    pairs
}

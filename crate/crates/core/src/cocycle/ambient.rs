use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::simplex::{binomial, faces_of_dim, Face};
use crate::zlinalg::Field;

/// Indexing of facets and ridges of the full simplex on `n` vertices, with
/// the signed facet-ridge incidences. Facet `i` is the facet of colex rank
/// `i`; for `d = 1` the single "ridge" is the empty face.
#[derive(Debug)]
pub(crate) struct Ambient {
    pub n: usize,
    pub d: usize,
    pub facets: Vec<Face>,
    pub ridge_count: usize,
    /// Row `f` of the coboundary from ridges to facets: `(ridge, sign)`.
    pub cob: Vec<Vec<(usize, i64)>>,
    /// Column `r` of the same map: `(facet, sign)`.
    pub ridge_cob: Vec<Vec<(usize, i64)>>,
    /// Vertex set of each facet as a bit mask.
    pub masks: Vec<u128>,
}

type Cache = Mutex<HashMap<(usize, usize), Arc<Ambient>>>;

impl Ambient {
    pub fn get(n: usize, d: usize) -> Arc<Ambient> {
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("ambient cache lock");
        guard.entry((n, d)).or_insert_with(|| Arc::new(Ambient::build(n, d))).clone()
    }

    fn build(n: usize, d: usize) -> Ambient {
        let facets: Vec<Face> = faces_of_dim(n, d - 1).collect();
        let ridge_count = if d == 1 { 1 } else { binomial(n, d - 1) as usize };
        assert!(n <= 128, "cochain computations support at most 128 vertices");
        let mut ridge_cob = vec![Vec::new(); ridge_count];
        let cob: Vec<Vec<(usize, i64)>> = facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.boundary_ranks()
                    .map(|(sign, r)| {
                        ridge_cob[r as usize].push((i, sign));
                        (r as usize, sign)
                    })
                    .collect()
            })
            .collect();
        let masks = facets.iter().map(|f| f.vertices().iter().fold(0u128, |m, &v| m | 1 << v)).collect();
        Ambient { n, d, facets, ridge_count, cob, ridge_cob, masks }
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn index(&self, f: &Face) -> usize {
        f.rank(self.n).expect("facet in range") as usize
    }

    /// Facets sharing a ridge with facet `i`, excluding `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.cob[i].iter().flat_map(move |&(r, _)| self.ridge_cob[r].iter().map(|e| e.0).filter(move |&j| j != i))
    }

    /// `(facet index, sign)` of the facets of a `d`-face.
    pub fn face_facets(&self, sigma: &Face) -> Vec<(usize, i64)> {
        sigma.boundary_ranks().map(|(s, r)| (r as usize, s)).collect()
    }

    /// Every nonzero coboundary has support at least `ceil(n / d)`: if it
    /// vanished on all facets through some vertex `v`, contracting with `v`
    /// would exhibit it as the coboundary of zero. A support-`k` cochain can
    /// only lose weight through a coboundary of support at most `2k - 1`.
    pub fn weight_is_support(&self, k: usize) -> bool {
        self.n.div_ceil(self.d) >= 2 * k
    }

    /// Whether `phi + delta(psi)` vanishes outside `support` for some `psi`,
    /// i.e. the restriction of `phi` to the other facets lies in the column
    /// space of the restricted coboundary.
    pub fn coset_meets_support<F: Field>(&self, field: &F, phi: &[F::Elem], in_support: &[bool]) -> bool {
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (f, inside) in in_support.iter().enumerate() {
            if *inside {
                continue;
            }
            let mut row = vec![field.zero(); self.ridge_count + 1];
            for &(r, s) in &self.cob[f] {
                row[r] = field.embed_i64(s);
            }
            row[self.ridge_count] = phi[f].clone();
            rows.push(row);
        }
        if rows.is_empty() {
            return true;
        }
        let mut m = rows;
        let pivots = crate::zlinalg::rref(field, &mut m);
        pivots.last() != Some(&self.ridge_count)
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

//! Integral homology in degree `d - 1` of complexes with complete
//! `(d-1)`-skeleton.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::simplex::{binomial, faces_of_dim, Complex};
use crate::zlinalg::{rank_mod_q, rank_rational, smith_normal_form, FieldSpec, SparseIntMatrix, CHECK_PRIME};

/// `H_{d-1}(Y; Z) = Z^free_rank + sum_i Z/torsion_i` (reduced when `d = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl HomologySummary {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Boundary matrix in dimension `dim`, which must be `d` or `d - 1`.
///
/// For `dim = d` the rows are all facets and the columns are the top faces
/// of `y`, both in colex order. For `dim = d - 1` the columns are all
/// `C(n, d)` facets. When `d = 1` the lower map is the `1 x n` augmentation,
/// which yields reduced homology.
pub fn boundary_matrix(y: &Complex, dim: usize) -> Result<SparseIntMatrix> {
    let (n, d) = (y.n(), y.d());
    if dim == d {
        Ok(top_boundary(y))
    } else if dim + 1 == d {
        Ok(full_boundary(n, dim))
    } else {
        Err(Error::InvalidParameter(format!("boundary dimension must be {} or {d}, got {dim}", d - 1)))
    }
}

fn top_boundary(y: &Complex) -> SparseIntMatrix {
    let rows = binomial(y.n(), y.d()) as usize;
    let triplets = y
        .faces()
        .enumerate()
        .flat_map(|(j, s)| s.boundary_ranks().map(move |(sign, r)| (r as usize, j, Int::from(sign))));
    SparseIntMatrix::from_triplets(rows, y.num_faces(), triplets).expect("ranks in range")
}

/// Boundary map from all `dim`-faces on `n` vertices.
fn full_boundary(n: usize, dim: usize) -> SparseIntMatrix {
    let rows = if dim == 0 { 1 } else { binomial(n, dim) as usize };
    let cols = binomial(n, dim + 1) as usize;
    let triplets = faces_of_dim(n, dim)
        .enumerate()
        .flat_map(|(j, s)| s.boundary_ranks().map(|(sign, r)| (r as usize, j, Int::from(sign))).collect::<Vec<_>>());
    SparseIntMatrix::from_triplets(rows, cols, triplets).expect("ranks in range")
}

/// `dim ker` of the boundary map on facets; equals `C(n-1, d)`.
///
/// Computed once per `(n, d)` by Smith normal form, which also checks that
/// the kernel is a direct summand (all invariant factors equal one), so that
/// torsion of `H_{d-1}` is read off `SNF(boundary_d)` alone.
pub fn facet_cycle_rank(n: usize, d: usize) -> usize {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), usize>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&k) = cache.lock().expect("cache lock").get(&(n, d)) {
        return k;
    }
    let m = full_boundary(n, d - 1);
    let snf = smith_normal_form(&m, false);
    assert!(
        snf.invariant_factors.iter().all(Int::is_one),
        "boundary of the complete skeleton on {n} vertices has torsion in dimension {}",
        d - 1
    );
    let k = m.cols() - snf.rank;
    cache.lock().expect("cache lock").insert((n, d), k);
    k
}

pub fn homology(y: &Complex) -> HomologySummary {
    let kerdim = facet_cycle_rank(y.n(), y.d());
    let snf = smith_normal_form(&top_boundary(y), false);
    HomologySummary { free_rank: kerdim - snf.rank, torsion: snf.torsion() }
}

/// Dimension of `H_{d-1}(Y; F)`.
pub fn betti(y: &Complex, field: FieldSpec) -> Result<usize> {
    let kerdim = facet_cycle_rank(y.n(), y.d());
    let m = top_boundary(y);
    let rank = match field {
        FieldSpec::Prime(q) => rank_mod_q(&m, q)?,
        FieldSpec::Rational => rank_rational(&m),
    };
    Ok(kerdim - rank)
}

/// Whether `H_{d-1}(Y; Z)` vanishes.
///
/// Ranks modulo 2 and modulo a 30-bit prime are checked first; since the
/// image of the top boundary lies in a kernel of rank `C(n-1, d)`, full rank
/// modulo any prime already forces full rational rank, and the Smith form is
/// only needed to rule out odd torsion.
pub fn homology_is_zero(y: &Complex) -> bool {
    let kerdim = facet_cycle_rank(y.n(), y.d());
    if y.num_faces() < kerdim {
        return false;
    }
    let m = top_boundary(y);
    for q in [2, CHECK_PRIME] {
        if rank_mod_q(&m, q).expect("prime modulus") < kerdim {
            return false;
        }
    }
    let snf = smith_normal_form(&m, false);
    snf.rank == kerdim && snf.invariant_factors.iter().all(Int::is_one)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::simplex::Face;

    pub(crate) fn rp2() -> Complex {
        let tri = [
            [0, 1, 3],
            [0, 1, 5],
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 4],
            [1, 2, 3],
            [1, 2, 4],
            [1, 4, 5],
            [2, 3, 5],
            [3, 4, 5],
        ];
        Complex::from_faces(6, 2, tri.iter().map(|t| Face::new(t.to_vec()).unwrap())).unwrap()
    }

    #[test]
    fn k3_edge_boundary() {
        let y = Complex::full_skeleton(3, 1).unwrap();
        let m = boundary_matrix(&y, 1).unwrap();
        let want = SparseIntMatrix::from_dense(&[vec![-1i64, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(m, want);
        let aug = boundary_matrix(&y, 0).unwrap();
        assert_eq!(aug, SparseIntMatrix::from_dense(&[vec![1i64, 1, 1]]));
        assert!(boundary_matrix(&y, 2).is_err());
    }

    #[test]
    fn chain_complex_identity() {
        for (n, d) in [(5, 1), (6, 2), (6, 3)] {
            let y = Complex::full_skeleton(n, d).unwrap();
            let top = boundary_matrix(&y, d).unwrap();
            let low = boundary_matrix(&y, d - 1).unwrap();
            assert!(low.mul(&top).is_zero());
        }
    }

    #[test]
    fn empty_complex_has_binomial_rank() {
        for (n, d) in [(4, 2), (7, 2), (6, 3), (5, 1)] {
            let y = Complex::empty(n, d).unwrap();
            let h = homology(&y);
            assert_eq!(h.free_rank as u64, binomial(n - 1, d));
            assert!(h.torsion.is_empty());
            for f in [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
                assert_eq!(betti(&y, f).unwrap() as u64, binomial(n - 1, d));
            }
            assert_eq!(boundary_matrix(&y, d).unwrap().cols(), 0);
        }
    }

    #[test]
    fn small_examples() {
        let y = Complex::full_skeleton(3, 2).unwrap();
        assert_eq!(homology(&y), HomologySummary { free_rank: 0, torsion: vec![] });
        for (n, d) in [(6, 2), (7, 3), (5, 1)] {
            assert!(homology_is_zero(&Complex::full_skeleton(n, d).unwrap()));
            assert!(!homology_is_zero(&Complex::empty(n, d).unwrap()));
        }
    }

    #[test]
    fn projective_plane() {
        let y = rp2();
        let h = homology(&y);
        assert_eq!(h, HomologySummary { free_rank: 0, torsion: vec![Int::from(2)] });
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"free_rank":0,"torsion":[2]}"#);
        assert_eq!(betti(&y, FieldSpec::Rational).unwrap(), 0);
        assert_eq!(betti(&y, FieldSpec::Prime(2)).unwrap(), 1);
        assert_eq!(betti(&y, FieldSpec::Prime(3)).unwrap(), 0);
        assert!(!homology_is_zero(&y));
    }
}

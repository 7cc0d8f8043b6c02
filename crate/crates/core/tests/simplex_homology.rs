mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use common::*;
use lmtopo_core::homology::{boundary_matrix, facet_cycle_rank};
use lmtopo_core::simplex::{
    binomial, enumerate_strongly_connected, face_rank, face_unrank, faces_of_dim, strong_count_bound,
};
use lmtopo_core::{betti, homology, homology_is_zero, Complex, Face, FieldSpec, Int};

/// Signed boundary of the top faces of `y`, with rows indexed by all facets
/// in lexicographic order. Row order does not affect invariant factors.
fn dense_boundary(y: &Complex) -> Vec<Vec<BigInt>> {
    let n = y.n() as u32;
    let d = y.d();
    let mut facets: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..d {
        facets = facets
            .into_iter()
            .flat_map(|f| {
                let start = f.last().map_or(0, |&v| v + 1);
                (start..n).map(move |v| f.iter().copied().chain([v]).collect::<Vec<u32>>())
            })
            .collect();
    }
    let mut m = vec![vec![BigInt::from(0); y.num_faces()]; facets.len()];
    for (j, s) in y.faces().enumerate() {
        for i in 0..s.len() {
            let mut t = s.vertices().to_vec();
            t.remove(i);
            let row = facets.iter().position(|f| *f == t).unwrap();
            m[row][j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

fn complex_strategy(max_n: usize) -> impl Strategy<Value = Complex> {
    (3usize..=max_n, 1usize..=3)
        .prop_filter("d < n", |(n, d)| d < n)
        .prop_flat_map(|(n, d)| {
            let total = binomial(n, d + 1) as usize;
            (Just(n), Just(d), prop::collection::vec(any::<bool>(), total))
        })
        .prop_map(|(n, d, keep)| {
            let faces = faces_of_dim(n, d).zip(keep).filter(|(_, k)| *k).map(|(f, _)| f);
            Complex::from_faces(n, d, faces).unwrap()
        })
}

proptest! {
    #[test]
    fn rank_unrank_roundtrip(n in 1usize..=30, seed in any::<u64>()) {
        let dim = (seed % n as u64) as usize;
        let total = binomial(n, dim + 1);
        let r = seed % total;
        let f = face_unrank(r, dim, n).unwrap();
        prop_assert_eq!(f.dim(), dim);
        prop_assert!(f.vertices().windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(face_rank(&f, n).unwrap(), r);
    }

    #[test]
    fn boundary_of_boundary_vanishes(y in complex_strategy(7)) {
        prop_assume!(y.d() >= 2);
        let lower = boundary_matrix(&y, y.d() - 1).unwrap();
        let upper = boundary_matrix(&y, y.d()).unwrap();
        prop_assert_eq!(lower.cols(), upper.rows());
        prop_assert!(lower.mul(&upper).iter().next().is_none());
    }

    #[test]
    fn field_betti_numbers_follow_universal_coefficients(y in complex_strategy(7)) {
        let h = homology(&y);
        prop_assert_eq!(betti(&y, FieldSpec::Rational).unwrap(), h.free_rank);
        for p in [2u64, 3, 5] {
            let divisible = h.torsion.iter().filter(|t| t.to_bigint().is_multiple_of(&BigInt::from(p))).count();
            prop_assert_eq!(betti(&y, FieldSpec::Prime(p)).unwrap(), h.free_rank + divisible);
        }
        prop_assert_eq!(homology_is_zero(&y), h.is_zero());
    }

    #[test]
    fn free_rank_from_kernel_dimension(y in complex_strategy(7)) {
        let rank = rank_over_rationals(&dense_boundary(&y));
        prop_assert_eq!(homology(&y).free_rank, binomial(y.n() - 1, y.d()) as usize - rank);
        prop_assert_eq!(facet_cycle_rank(y.n(), y.d()), binomial(y.n() - 1, y.d()) as usize);
    }
}

#[test]
fn colex_order_matches_ranks() {
    for (n, dim) in [(6, 0), (6, 2), (7, 3), (9, 1)] {
        for (i, f) in faces_of_dim(n, dim).enumerate() {
            assert_eq!(face_rank(&f, n).unwrap(), i as u64);
        }
        assert_eq!(faces_of_dim(n, dim).count() as u64, binomial(n, dim + 1));
    }
}

/// Torsion read off the invariant factors of the top boundary, computed from
/// determinantal divisors.
#[test]
fn torsion_matches_minors_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let keep = rng.gen_range(1..=6);
        let mut all: Vec<Face> = faces_of_dim(5, 2).collect();
        while all.len() > keep {
            all.remove(rng.gen_range(0..all.len()));
        }
        let y = Complex::from_faces(5, 2, all).unwrap();
        let factors = invariant_factors_by_minors(&dense_boundary(&y));
        let torsion: Vec<BigInt> = factors.into_iter().filter(|s| !s.is_one()).collect();
        assert_eq!(homology(&y).torsion, ints(&torsion));
    }
}

/// For graphs the reduced free rank is the number of components minus one.
#[test]
fn graph_homology_counts_components() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let n = rng.gen_range(2..=12);
        let y = Complex::from_faces(n, 1, faces_of_dim(n, 1).filter(|_| rng.gen_bool(0.2))).unwrap();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                i = p[i];
            }
            i
        }
        for e in y.faces() {
            let (a, b) = (root(&mut parent, e.vertices()[0] as usize), root(&mut parent, e.vertices()[1] as usize));
            parent[a] = b;
        }
        let components = (0..n).filter(|&i| parent[i] == i).count();
        let h = homology(&y);
        assert_eq!(h.free_rank, components - 1);
        assert!(h.torsion.is_empty());
    }
}

#[test]
fn golden_values() {
    for (n, d) in [(4, 2), (6, 2), (7, 3), (9, 1)] {
        let empty = Complex::empty(n, d).unwrap();
        let expected = binomial(n - 1, d) as usize;
        for f in [FieldSpec::Rational, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            assert_eq!(betti(&empty, f).unwrap(), expected);
        }
        assert!(homology(&Complex::full_skeleton(n, d).unwrap()).is_zero());
    }
}

#[test]
fn strongly_connected_counts_match_brute_force() {
    for n in 3..=6usize {
        let edges: Vec<Face> = faces_of_dim(n, 1).collect();
        for k in 1..=4usize {
            let count = enumerate_strongly_connected(n, 1, k).unwrap().count();
            let mut brute = 0;
            let m = edges.len();
            for mask in 0u32..1 << m {
                if mask.count_ones() as usize == k {
                    let set: Vec<Face> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()).collect();
                    brute += strongly_connected_by_search(&set) as usize;
                }
            }
            assert_eq!(count, brute, "n={n} k={k}");
            assert!(Int::from(count) <= strong_count_bound(n, 2, k));
        }
    }
}

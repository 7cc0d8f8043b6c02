mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use lmtopo_core::zlinalg::{
    cokernel_torsion, complete_to_square, rank_mod_q, rank_rational, smith_normal_form, torsion_bound_holds,
};
use lmtopo_core::SparseIntMatrix;

fn check_against_minors(m: &SparseIntMatrix) {
    let dense = to_big(m);
    let expected = invariant_factors_by_minors(&dense);
    let snf = smith_normal_form(m, true);
    assert_eq!(snf.invariant_factors, ints(&expected), "matrix:\n{}", m.dump());
    assert_eq!(snf.rank, rank_over_rationals(&dense));

    let t = snf.transforms.as_ref().unwrap();
    let (u, v) = (to_big(&t.u), to_big(&t.v));
    assert!(is_unit(&det(u.clone())) && is_unit(&det(v.clone())));
    let s = mat_mul(&mat_mul(&u, &dense), &v);
    assert_eq!(s, to_big(&snf.diagonal(m.rows(), m.cols())));
}

#[test]
fn random_matrices_match_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        check_against_minors(&random_test_matrix(&mut rng, 6));
    }
}

#[test]
fn edge_shapes() {
    for m in [
        SparseIntMatrix::zeros(3, 4),
        SparseIntMatrix::zeros(0, 2),
        SparseIntMatrix::identity(5),
        SparseIntMatrix::from_dense(&[vec![0i64, 0, 7]]),
        SparseIntMatrix::from_dense(&[vec![6i64], vec![10], vec![15]]),
    ] {
        let snf = smith_normal_form(&m, true);
        let t = snf.transforms.as_ref().unwrap();
        assert_eq!(t.u.mul(&m).mul(&t.v), snf.diagonal(m.rows(), m.cols()));
    }
    let snf = smith_normal_form(&SparseIntMatrix::from_dense(&[vec![6i64], vec![10], vec![15]]), false);
    assert_eq!(snf.invariant_factors, ints(&[BigInt::from(1)]));
}

#[test]
fn large_entries_promote_exactly() {
    let big = i64::MAX / 3;
    let m = SparseIntMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big]]);
    let dense = to_big(&m);
    let d = det(dense.clone()).abs();
    let snf = smith_normal_form(&m, false);
    let product = snf.invariant_factors.iter().fold(BigInt::from(1), |acc, s| acc * s.to_bigint());
    assert_eq!(product, d);
    check_against_minors(&m);
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #[test]
    fn divisibility_chain_and_transpose(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        let s = smith_normal_form(&m, false);
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].to_bigint().is_multiple_of(&w[0].to_bigint()));
        }
        prop_assert!(s.invariant_factors.iter().all(|x| !x.is_negative() && !x.is_zero()));
        prop_assert_eq!(&smith_normal_form(&m.transpose(), false).invariant_factors, &s.invariant_factors);
    }

    #[test]
    fn ranks_agree(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        let r = rank_rational(&m);
        prop_assert_eq!(r, rank_over_rationals(&to_big(&m)));
        prop_assert_eq!(r, smith_normal_form(&m, false).rank);
        for q in [2u64, 3, 5, 7, 1_000_003] {
            let rq = rank_mod_q(&m, q).unwrap();
            prop_assert!(rq <= r);
            // rank drops mod q exactly when q divides some invariant factor
            let divides = smith_normal_form(&m, false)
                .invariant_factors
                .iter()
                .filter(|s| s.to_bigint().is_multiple_of(&BigInt::from(q)))
                .count();
            prop_assert_eq!(rq, r - divides);
        }
    }

    #[test]
    fn column_norm_bound_holds(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        let tb = torsion_bound_holds(&m);
        prop_assert!(tb.holds);
        let order = cokernel_torsion(&m).iter().fold(BigInt::from(1), |acc, s| acc * s.to_bigint());
        prop_assert_eq!(tb.torsion_order.to_bigint(), order);
    }

    #[test]
    fn square_completion_preserves_columns(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        match complete_to_square(&m) {
            Ok(sq) => {
                prop_assert_eq!(sq.rows(), sq.cols());
                prop_assert!(!det(to_big(&sq)).is_zero());
                for (i, j, v) in m.iter() {
                    prop_assert_eq!(&sq.get(i, j), v);
                }
            }
            Err(_) => prop_assert!(m.cols() > m.rows() || rank_rational(&m) < m.cols()),
        }
    }

    #[test]
    fn dump_roundtrip(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&rows);
        prop_assert_eq!(SparseIntMatrix::parse_dump(&m.dump()).unwrap(), m);
    }
}

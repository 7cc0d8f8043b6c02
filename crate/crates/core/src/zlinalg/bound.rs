use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rank::rank_rational;
use super::snf::smith_normal_form;
use super::sparse::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::int::Int;

/// Invariant factors greater than one, in divisibility order.
pub fn cokernel_torsion(m: &SparseIntMatrix) -> Vec<Int> {
    smith_normal_form(m, false).torsion()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBound {
    pub holds: bool,
    /// Order of the torsion subgroup of the cokernel.
    pub torsion_order: Int,
    /// `t^rank` with `t` the largest Euclidean column norm rounded up.
    pub bound: Int,
    pub rank: usize,
}

fn ceil_sqrt(x: &Int) -> Int {
    let b = x.to_bigint();
    let s = b.sqrt();
    let s = if &s * &s < b { s + 1u32 } else { s };
    Int::from(s)
}

/// Checks `|coker(M)_T| <= t^rank(M)`, where `t` is the largest Euclidean
/// column norm. The comparison is exact: `|coker_T|^2 <= (max |col|^2)^rank`.
pub fn torsion_bound_holds(m: &SparseIntMatrix) -> TorsionBound {
    let snf = smith_normal_form(m, false);
    let order = snf.invariant_factors.iter().fold(Int::ONE, |acc, s| &acc * s);
    let max_sq = m.column_sq_norms().into_iter().max().unwrap_or(Int::ZERO);
    let rank = snf.rank;
    let exp = rank.to_u32().expect("rank fits in u32");
    let holds = &order * &order <= max_sq.pow(exp);
    TorsionBound { holds, torsion_order: order, bound: ceil_sqrt(&max_sq).pow(exp), rank }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixBoundAudit {
    pub trials: usize,
    pub violations: usize,
    /// Dumps of the violating matrices.
    pub counterexamples: Vec<String>,
}

/// Checks [`torsion_bound_holds`] on `trials` random matrices with
/// dimensions in `1..=max_dim` and entries in `[-entry_bound, entry_bound]`.
pub fn matrixbound_audit(trials: usize, max_dim: usize, entry_bound: i64, seed: u64) -> MatrixBoundAudit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..trials {
        let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let m = SparseIntMatrix::random(&mut rng, r, c, entry_bound);
        if !torsion_bound_holds(&m).holds {
            counterexamples.push(m.dump());
        }
    }
    MatrixBoundAudit { trials, violations: counterexamples.len(), counterexamples }
}

/// Appends standard basis columns, smallest index first, each chosen outside
/// the rational span of the columns so far, until the matrix is square.
pub fn complete_to_square(n: &SparseIntMatrix) -> Result<SparseIntMatrix> {
    let (rows, cols) = (n.rows(), n.cols());
    if cols > rows || rank_rational(n) != cols {
        return Err(Error::DependentColumns);
    }
    let mut current = n.clone();
    for i in 0..rows {
        if current.cols() == rows {
            break;
        }
        let e = SparseIntMatrix::from_triplets(rows, 1, [(i, 0, Int::ONE)]).expect("index in range");
        let candidate = current.hstack(&e);
        if rank_rational(&candidate) == candidate.cols() {
            current = candidate;
        }
    }
    Ok(current)
}

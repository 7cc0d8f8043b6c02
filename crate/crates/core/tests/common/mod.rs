//! Reference implementations used as test oracles. They share no code with
//! the library beyond the matrix and face containers.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use lmtopo_core::simplex::Face;
use lmtopo_core::{Int, SparseIntMatrix};

pub fn to_big(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense().iter().map(|r| r.iter().map(|x| x.to_bigint()).collect()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn rank_over_rationals(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let (x, y) = (a[rank][c].clone(), a[i][c].clone());
            let (top, bottom) = a.split_at_mut(i);
            for (dst, src) in bottom[0].iter_mut().zip(&top[rank]) {
                *dst = &*dst * &x - src * &y;
            }
        }
        rank += 1;
    }
    rank
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

/// Random test matrix: plain uniform entries, a sparse pattern, or a product
/// of two factors through a narrow middle dimension (which forces rank
/// deficiency and tends to produce torsion).
pub fn random_test_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> SparseIntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    match rng.gen_range(0..3) {
        0 => SparseIntMatrix::random(rng, r, c, 3),
        1 => {
            let dense: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-4..=4) } else { 0 }).collect())
                .collect();
            SparseIntMatrix::from_dense(&dense)
        }
        _ => {
            let k = rng.gen_range(1..=max_dim);
            let a = SparseIntMatrix::random(rng, r, k, 2);
            let b = SparseIntMatrix::random(rng, k, c, 2);
            a.mul(&b)
        }
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int::from).collect()
}

/// Whether `faces` is connected under "shares all but one vertex".
pub fn strongly_connected_by_search(faces: &[Face]) -> bool {
    if faces.is_empty() {
        return false;
    }
    let adjacent = |a: &Face, b: &Face| {
        let common = a.vertices().iter().filter(|v| b.vertices().contains(v)).count();
        common + 1 == a.len()
    };
    let mut seen = vec![false; faces.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..faces.len() {
            if !seen[j] && adjacent(&faces[i], &faces[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

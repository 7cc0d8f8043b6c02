use std::collections::HashMap;

use super::primes::{inv_mod, is_prime, mul_mod};
use super::sparse::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::int::Int;

/// Rank over the field with `q` elements.
pub fn rank_mod_q(m: &SparseIntMatrix, q: u64) -> Result<usize> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for r in 0..m.rows() {
        let mut row: Vec<(usize, u64)> =
            m.row(r).iter().map(|(c, v)| (*c, v.mod_u64(q))).filter(|e| e.1 != 0).collect();
        while let Some(&(lead, a)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    // p is monic, so row -= a * p clears the leading entry
                    row = sub_scaled(&row, a, p, q);
                }
                None => {
                    let inv = inv_mod(a, q);
                    let monic = row.iter().map(|&(c, v)| (c, mul_mod(v, inv, q))).collect();
                    pivots.insert(lead, monic);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

fn sub_scaled(row: &[(usize, u64)], f: u64, p: &[(usize, u64)], q: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (0, 0);
    let neg = |v: u64| if v == 0 { 0 } else { q - v };
    while i < row.len() || j < p.len() {
        if j == p.len() || (i < row.len() && row[i].0 < p[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i == row.len() || p[j].0 < row[i].0 {
            out.push((p[j].0, neg(mul_mod(f, p[j].1, q))));
            j += 1;
        } else {
            let s = (row[i].1 + neg(mul_mod(f, p[j].1, q))) % q;
            if s != 0 {
                out.push((row[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact rank over the rationals by fraction-free elimination.
///
/// Each incoming row is reduced against the stored pivot rows by
/// cross-multiplication (`a * row - b * pivot`) and then divided by the gcd
/// of its entries, so all arithmetic stays in the integers.
pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, Int)>> = HashMap::new();
    for r in 0..m.rows() {
        let mut row: Vec<(usize, Int)> = m.row(r).to_vec();
        while let Some((lead, b)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let a = p[0].1.clone();
                    let g = a.gcd(&b);
                    row = combine(&row, &a.div_exact(&g), p, &b.div_exact(&g));
                    make_primitive(&mut row);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `fa * a - fb * b`, dropping zeros.
fn combine(a: &[(usize, Int)], fa: &Int, b: &[(usize, Int)], fb: &Int) -> Vec<(usize, Int)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push((a[i].0, fa * &a[i].1));
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(fb * &b[j].1)));
            j += 1;
        } else {
            let s = &(fa * &a[i].1) - &(fb * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(row: &mut [(usize, Int)]) {
    let mut g = Int::ZERO;
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

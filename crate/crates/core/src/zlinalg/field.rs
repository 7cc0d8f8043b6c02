//! Coefficient fields and small dense linear algebra over them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::primes::{inv_mod, is_prime};
use crate::error::{Error, Result};

/// A field choice: the integers modulo a prime, or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn prime(q: u64) -> Result<FieldSpec> {
        if is_prime(q) {
            Ok(FieldSpec::Prime(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn validate(self) -> Result<FieldSpec> {
        match self {
            FieldSpec::Prime(q) => FieldSpec::prime(q),
            FieldSpec::Rational => Ok(self),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(q) => write!(f, "{q}"),
            FieldSpec::Rational => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        let q: u64 =
            s.parse().map_err(|_| Error::InvalidParameter(format!("field must be a prime or Q, got {s:?}")))?;
        FieldSpec::prime(q)
    }
}

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed_i64(&self, v: i64) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    /// Panics if the denominator is not invertible.
    fn embed_rational(&self, x: &BigRational) -> Self::Elem;
}

/// Integers modulo a prime `q`, elements kept in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    q: u64,
}

impl Fp {
    pub fn new(q: u64) -> Result<Fp> {
        if is_prime(q) {
            Ok(Fp { q })
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

impl Field for Fp {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.q as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        super::primes::mul_mod(*a, *b, self.q)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        inv_mod(*a, self.q)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.q as i128) as u64
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn embed_rational(&self, x: &BigRational) -> u64 {
        rational_mod(x, self.q).expect("denominator divisible by the modulus")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn embed_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn embed_rational(&self, x: &BigRational) -> BigRational {
        x.clone()
    }
}

/// Reduces `m` (a list of equal-length rows) to reduced row echelon form in
/// place, dropping zero rows. Returns the pivot column of each kept row.
pub fn rref<F: Field>(field: &F, m: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&f, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

pub fn dense_rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut m = m.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn kernel_basis<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut r = m.to_vec();
    let pivots = rref(field, &mut r);
    let mut is_pivot = vec![false; cols];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{y : y^T m = 0}`.
pub fn left_null_space<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let t: Vec<Vec<F::Elem>> = (0..cols).map(|c| (0..rows).map(|r| m[r][c].clone()).collect()).collect();
    kernel_basis(field, &t, rows)
}

/// Canonical representative in `[0, q)` of a rational with denominator prime to `q`.
pub fn rational_mod(x: &BigRational, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let num = x.numer().mod_floor_big(&qb);
    let den = x.denom().mod_floor_big(&qb);
    if den == 0 {
        return None;
    }
    Some(super::primes::mul_mod(num, inv_mod(den, q), q))
}

trait ModFloorBig {
    fn mod_floor_big(&self, q: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, q: &BigInt) -> u64 {
        let mut r = self % q;
        if r.is_negative() {
            r += q;
        }
        u64::try_from(r).expect("residue fits")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        Rationals.embed_i64(v)
    }

    #[test]
    fn parse_field() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert!(matches!("9".parse::<FieldSpec>(), Err(Error::NotPrime(9))));
        assert!("x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.embed_i64(-1), 6);
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(f.sub(&2, &5), 4);
        assert!(Fp::new(1).is_err());
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(dense_rank(&Rationals, &m), 1);
        let k = kernel_basis(&Rationals, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        let left = left_null_space(&Rationals, &m);
        assert_eq!(left, vec![vec![q(-2), q(1)]]);

        let f = Fp::new(2).unwrap();
        let m = vec![vec![1u64, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(dense_rank(&f, &m), 2);
        assert_eq!(kernel_basis(&f, &m, 3), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn rational_residues() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod(&half, 7), Some(4));
        assert_eq!(rational_mod(&half, 2), None);
        assert_eq!(rational_mod(&q(-3), 5), Some(2));
    }
}

//! Arbitrary-precision integers with an inline fast path.
//!
//! Boundary matrices start with entries in {-1, 0, 1} and almost always stay
//! small during elimination, so values are kept as `i64` until an operation
//! overflows, at which point they are promoted to a heap-allocated `BigInt`.
//! Results that fit back into an `i64` are demoted again.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    /// True for +1 and -1.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Quotient rounded toward zero, so that `self - q * d` has the sign of
    /// `self` and absolute value below `|d|`.
    pub fn div_trunc(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(q) => Int::Small(q),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_bigint() / d.to_bigint()),
        }
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, d: &Int) -> Int {
        let q = self.div_trunc(d);
        debug_assert!((&q * d) == *self, "inexact division {self} / {d}");
        q
    }

    pub fn rem_trunc(&self, d: &Int) -> Int {
        let q = self.div_trunc(d);
        self - &(&q * d)
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => Int::Small(a.gcd(b)),
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
    pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let e = a.to_bigint().extended_gcd(&b.to_bigint());
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        (Int::from_big(g), Int::from_big(s), Int::from_big(t))
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Residue in `[0, q)`.
    pub fn mod_u64(&self, q: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(q as i128) as u64,
            Int::Big(b) => {
                let r = b.mod_floor(&BigInt::from(q));
                r.to_u64().expect("residue fits in u64")
            }
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_bigint()
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(s) => Int::Small(s),
                None => Int::Big(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_bigint() + rhs.to_bigint()),
        }
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &'a Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_sub(*b) {
                Some(s) => Int::Small(s),
                None => Int::Big(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_bigint() - rhs.to_bigint()),
        }
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &'a Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(s) => Int::Small(s),
                None => Int::Big(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_bigint() * rhs.to_bigint()),
        }
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::from_big(BigInt::from_str(s.trim())?))
    }
}

// Large values are emitted as bare JSON numbers of arbitrary length.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => serializer.serialize_i64(*v),
            Int::Big(b) => {
                let n = serde_json::Number::from_str(&b.to_string()).map_err(serde::ser::Error::custom)?;
                n.serialize(serializer)
            }
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        Int::from_str(&n.to_string()).map_err(serde::de::Error::custom)
    }
}

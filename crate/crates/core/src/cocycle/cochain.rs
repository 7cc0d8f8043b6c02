use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ambient::Ambient;
use crate::error::{Error, Result};
use crate::simplex::{Face, FacetSet};
use crate::zlinalg::{rational_mod, Field, FieldSpec};

/// A `(d-1)`-cochain on the full simplex over a prime field or the rationals.
///
/// Values over `Z/q` are stored as their representatives in `[1, q)`; zero
/// values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    d: usize,
    field: FieldSpec,
    values: BTreeMap<Face, BigRational>,
}

fn normalize(field: FieldSpec, x: BigRational) -> Result<Option<BigRational>> {
    match field {
        FieldSpec::Rational => Ok((!x.is_zero()).then_some(x)),
        FieldSpec::Prime(q) => {
            let r = rational_mod(&x, q)
                .ok_or_else(|| Error::InvalidParameter(format!("denominator of {x} not invertible modulo {q}")))?;
            Ok((r != 0).then(|| BigRational::from_integer(BigInt::from(r))))
        }
    }
}

impl Cochain {
    pub fn zero(n: usize, d: usize, field: FieldSpec) -> Result<Cochain> {
        if d < 1 || n < d + 1 {
            return Err(Error::InvalidParameter(format!("need d >= 1 and n > d, got n = {n}, d = {d}")));
        }
        Ok(Cochain { n, d, field: field.validate()?, values: BTreeMap::new() })
    }

    /// Builds a cochain from rational values; entries reducing to zero are dropped.
    pub fn from_values(
        n: usize,
        d: usize,
        field: FieldSpec,
        values: impl IntoIterator<Item = (Face, BigRational)>,
    ) -> Result<Cochain> {
        let mut c = Cochain::zero(n, d, field)?;
        for (f, v) in values {
            c.set(f, v)?;
        }
        Ok(c)
    }

    pub fn from_ints(
        n: usize,
        d: usize,
        field: FieldSpec,
        values: impl IntoIterator<Item = (Face, i64)>,
    ) -> Result<Cochain> {
        let values = values.into_iter().map(|(f, v)| (f, BigRational::from_integer(BigInt::from(v))));
        Cochain::from_values(n, d, field, values)
    }

    /// The cochain taking value one on every member of `x`.
    pub fn indicator(field: FieldSpec, x: &FacetSet) -> Result<Cochain> {
        Cochain::from_ints(x.n(), x.dim() + 1, field, x.iter().map(|f| (f.clone(), 1)))
    }

    pub fn set(&mut self, f: Face, v: BigRational) -> Result<()> {
        if f.is_empty() || f.dim() + 1 != self.d {
            return Err(Error::DimensionMismatch { expected: self.d - 1, found: f.len().wrapping_sub(1) });
        }
        f.check_range(self.n)?;
        match normalize(self.field, v)? {
            Some(v) => self.values.insert(f, v),
            None => self.values.remove(&f),
        };
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, f: &Face) -> Option<&BigRational> {
        self.values.get(f)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Face, &BigRational)> {
        self.values.iter()
    }

    pub fn support(&self) -> FacetSet {
        FacetSet::new(self.n, self.d - 1, self.values.keys().cloned()).expect("support is valid")
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Dense values indexed by facet colex rank.
    pub(crate) fn dense<F: Field>(&self, field: &F, amb: &Ambient) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); amb.num_facets()];
        for (f, v) in &self.values {
            out[amb.index(f)] = field.embed_rational(v);
        }
        out
    }
}

/// `d`-faces of the full simplex containing at least one member of `facets`.
pub(crate) fn touching_faces<'a>(n: usize, facets: impl Iterator<Item = &'a Face>) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for f in facets {
        for v in 0..n as u32 {
            if let Some((_, s)) = f.cone(v) {
                out.insert(s);
            }
        }
    }
    out
}

/// Number of `d`-faces of the full simplex on which the coboundary of `phi`
/// is nonzero.
pub fn b_of_cochain(phi: &Cochain) -> usize {
    let sum_is_zero = |sigma: &Face| -> bool {
        let mut acc = BigRational::zero();
        for (sign, g) in sigma.boundary() {
            if let Some(v) = phi.values.get(&g) {
                if sign > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        match phi.field {
            FieldSpec::Rational => acc.is_zero(),
            FieldSpec::Prime(q) => rational_mod(&acc, q) == Some(0),
        }
    };
    touching_faces(phi.n, phi.values.keys()).iter().filter(|s| !sum_is_zero(s)).count()
}

/// Number of `d`-faces containing exactly one member of `x`.
pub fn beta_of_set(x: &FacetSet) -> usize {
    touching_faces(x.n(), x.iter()).iter().filter(|s| s.boundary().filter(|(_, g)| x.contains(g)).count() == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::faces_of_dim;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn values_are_reduced() {
        let c = Cochain::from_ints(5, 2, FieldSpec::Prime(3), [(face(&[0, 1]), 4), (face(&[0, 2]), 3)]).unwrap();
        assert_eq!(c.support_size(), 1);
        assert_eq!(c.get(&face(&[0, 1])), Some(&BigRational::from_integer(1.into())));
        let c = Cochain::from_ints(5, 2, FieldSpec::Prime(3), [(face(&[0, 1]), -1)]).unwrap();
        assert_eq!(c.get(&face(&[0, 1])), Some(&BigRational::from_integer(2.into())));
        assert!(Cochain::from_ints(5, 2, FieldSpec::Prime(4), []).is_err());
        assert!(Cochain::from_ints(5, 2, FieldSpec::Rational, [(face(&[0, 1, 2]), 1)]).is_err());
    }

    #[test]
    fn b_examples() {
        for (n, d) in [(5, 2), (7, 3), (6, 1)] {
            let f = faces_of_dim(n, d - 1).nth(2).unwrap();
            let x = FacetSet::new(n, d - 1, [f]).unwrap();
            let phi = Cochain::indicator(FieldSpec::Prime(2), &x).unwrap();
            assert_eq!(b_of_cochain(&phi), n - d);
            assert_eq!(beta_of_set(&x), n - d);
        }
        // two edges sharing vertex 0, n = 5: five triangles touch them, and
        // over Z/2 the common triangle {0,1,2} cancels
        let x = FacetSet::new(5, 1, [face(&[0, 1]), face(&[0, 2])]).unwrap();
        let phi = Cochain::indicator(FieldSpec::Prime(2), &x).unwrap();
        assert_eq!(b_of_cochain(&phi), 4);
        // over Q with values (1, -1) the value on {0,1,2} is 1 - (-1) = 2
        let phi = Cochain::from_ints(5, 2, FieldSpec::Rational, [(face(&[0, 1]), 1), (face(&[0, 2]), -1)]).unwrap();
        assert_eq!(b_of_cochain(&phi), 5);
        assert_eq!(b_of_cochain(&Cochain::zero(5, 2, FieldSpec::Rational).unwrap()), 0);
    }

    #[test]
    fn beta_examples() {
        let x = FacetSet::new(4, 1, [face(&[0, 1]), face(&[0, 2]), face(&[1, 2])]).unwrap();
        assert_eq!(beta_of_set(&x), 3);
        assert_eq!(beta_of_set(&FacetSet::new(4, 1, []).unwrap()), 0);
    }
}

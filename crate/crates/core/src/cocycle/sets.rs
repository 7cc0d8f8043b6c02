use std::collections::HashSet;

use super::ambient::{Ambient, Combinations};
use super::cochain::touching_faces;
use super::weight::{has_full_weight, Caps};
use crate::error::{Error, Result};
use crate::simplex::{binomial, Complex, Face, FacetSet};
use crate::zlinalg::{kernel_basis, primes_up_to, rref, Field, FieldSpec, Fp, Rationals};

/// The admissible fields for a set of `k` facets in dimension `d`: every
/// `Z/q` with `q^2 <= (d+1)^k`, followed by the rationals.
pub fn default_fields(d: usize, k: usize, caps: &Caps) -> Result<Vec<FieldSpec>> {
    // largest q with q^2 <= (d+1)^k, found without floating point
    let target = num_bigint::BigUint::from(d as u64 + 1).pow(k as u32);
    let root = target.sqrt();
    let bound = u64::try_from(&root)
        .ok()
        .filter(|&b| b <= caps.prime_bound)
        .ok_or_else(|| Error::CapExceeded(format!("admissible primes reach {root}, above cap {}", caps.prime_bound)))?;
    let mut out: Vec<FieldSpec> = primes_up_to(bound).into_iter().map(FieldSpec::Prime).collect();
    out.push(FieldSpec::Rational);
    Ok(out)
}

/// Signed incidences between `x` (columns, in order) and a `d`-face.
fn restricted_row(amb: &Ambient, cols: &[usize], sigma: &Face) -> Vec<(usize, i64)> {
    amb.face_facets(sigma).into_iter().filter_map(|(f, s)| cols.binary_search(&f).ok().map(|c| (c, s))).collect()
}

fn dense_rows<F: Field>(field: &F, rows: &[Vec<(usize, i64)>], width: usize) -> Vec<Vec<F::Elem>> {
    rows.iter()
        .map(|r| {
            let mut v = vec![field.zero(); width];
            for &(c, s) in r {
                v[c] = field.add(&v[c], &field.embed_i64(s));
            }
            v
        })
        .collect()
}

pub(crate) fn embed<F: Field>(field: &F, amb: &Ambient, cols: &[usize], v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); amb.num_facets()];
    for (c, x) in cols.iter().zip(v) {
        out[*c] = x.clone();
    }
    out
}

pub(crate) fn facet_indices(amb: &Ambient, x: &FacetSet) -> Vec<usize> {
    let mut cols: Vec<usize> = x.iter().map(|f| amb.index(f)).collect();
    cols.sort_unstable();
    cols
}

fn check_shape(x: &FacetSet, n: usize, d: usize) -> Result<()> {
    if x.n() != n || x.dim() + 1 != d {
        return Err(Error::DimensionMismatch { expected: d - 1, found: x.dim() });
    }
    Ok(())
}

/// Whether the subspace spanned by `basis` (vectors on `cols`) lies inside
/// the set of cochains with a representative of support `< |cols|`.
fn inside_low_weight<F: Field>(
    field: &F,
    amb: &Ambient,
    cols: &[usize],
    basis: &[Vec<F::Elem>],
    caps: &Caps,
) -> Result<bool> {
    let k = cols.len();
    if amb.weight_is_support(k) {
        return Ok(false);
    }
    let m = amb.num_facets();
    let count = binomial(m, k - 1);
    if count > caps.subsets {
        return Err(Error::CapExceeded(format!("{count} support patterns exceed cap {}", caps.subsets)));
    }
    let embedded: Vec<Vec<F::Elem>> = basis.iter().map(|b| embed(field, amb, cols, b)).collect();
    let mut in_s = vec![false; m];
    for s in Combinations::new(m, k - 1) {
        s.iter().for_each(|&f| in_s[f] = true);
        let all = embedded.iter().all(|b| amb.coset_meets_support(field, b, &in_s));
        s.iter().for_each(|&f| in_s[f] = false);
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

fn no_zero_coordinate<F: Field>(field: &F, basis: &[Vec<F::Elem>], k: usize) -> bool {
    (0..k).all(|i| basis.iter().any(|b| !field.is_zero(&b[i])))
}

/// `b(X)`: the least `b(phi)` over the listed fields and over cochains with
/// support exactly `x` and weight `|x|`. `None` stands for infinity.
pub fn b_of_set(x: &FacetSet, fields: &[FieldSpec], caps: &Caps) -> Result<Option<usize>> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = x.n();
    let d = x.dim() + 1;
    let amb = Ambient::get(n, d);
    let cols = facet_indices(&amb, x);
    let (mut beta, mut multi) = (0usize, Vec::new());
    for sigma in touching_faces(n, x.iter()) {
        let row = restricted_row(&amb, &cols, &sigma);
        if row.len() == 1 {
            beta += 1;
        } else {
            multi.push(row);
        }
    }
    let mut best: Option<usize> = None;
    for &field in fields {
        let extra = match field.validate()? {
            FieldSpec::Prime(q) => min_extra_prime(&Fp::new(q)?, &amb, &cols, &multi, caps)?,
            FieldSpec::Rational => min_extra_rational(&amb, &cols, &multi, caps)?,
        };
        if let Some(e) = extra {
            best = Some(best.map_or(beta + e, |b| b.min(beta + e)));
        }
    }
    Ok(best)
}

/// Over `Z/q`: enumerate all value assignments with first value one (scaling
/// changes neither support, weight nor `b`).
fn min_extra_prime(
    field: &Fp,
    amb: &Ambient,
    cols: &[usize],
    multi: &[Vec<(usize, i64)>],
    caps: &Caps,
) -> Result<Option<usize>> {
    let q = field.modulus();
    let k = cols.len();
    let count = (q - 1)
        .checked_pow(k as u32 - 1)
        .filter(|&c| c <= caps.subsets)
        .ok_or_else(|| Error::CapExceeded(format!("{}^{} assignments exceed cap {}", q - 1, k - 1, caps.subsets)))?;
    let mut vals = vec![1u64; k];
    let mut best = None;
    for step in 0..count {
        if step > 0 {
            let mut i = 1;
            while vals[i] == q - 1 {
                vals[i] = 1;
                i += 1;
            }
            vals[i] += 1;
        }
        let phi = embed(field, amb, cols, &vals);
        if !has_full_weight(field, amb, &phi, caps)? {
            continue;
        }
        let nonzero = multi
            .iter()
            .filter(|row| {
                let s = row
                    .iter()
                    .fold(0u64, |acc, &(c, sgn)| field.add(&acc, &field.mul(&field.embed_i64(sgn), &vals[c])));
                s != 0
            })
            .count();
        best = Some(best.map_or(nonzero, |b: usize| b.min(nonzero)));
    }
    Ok(best)
}

/// Over the rationals: `b(phi)` is determined by which multi-hit faces have
/// vanishing coboundary. For each subspace cut out by a subset of those
/// linear forms, a generic point avoids every proper subspace in sight
/// (coordinate hyperplanes, low-weight subspaces, the other forms), so the
/// minimum is taken over the admissible subspaces.
fn min_extra_rational(
    amb: &Ambient,
    cols: &[usize],
    multi: &[Vec<(usize, i64)>],
    caps: &Caps,
) -> Result<Option<usize>> {
    let field = Rationals;
    let k = cols.len();
    let subsets = 1u64
        .checked_shl(multi.len() as u32)
        .filter(|&c| c <= caps.subsets)
        .ok_or_else(|| Error::CapExceeded(format!("2^{} face subsets exceed cap {}", multi.len(), caps.subsets)))?;
    let forms = dense_rows(&field, multi, k);
    let mut seen = HashSet::new();
    let mut best = None;
    for mask in 0..subsets {
        let mut chosen: Vec<_> = (0..multi.len()).filter(|i| mask >> i & 1 == 1).map(|i| forms[i].clone()).collect();
        rref(&field, &mut chosen);
        if !seen.insert(format!("{chosen:?}")) {
            continue;
        }
        let basis = kernel_basis(&field, &chosen, k);
        if basis.is_empty() || !no_zero_coordinate(&field, &basis, k) {
            continue;
        }
        if inside_low_weight(&field, amb, cols, &basis, caps)? {
            continue;
        }
        let nonzero = forms
            .iter()
            .filter(|form| {
                basis.iter().any(|b| {
                    let dot = form.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)));
                    !field.is_zero(&dot)
                })
            })
            .count();
        best = Some(best.map_or(nonzero, |b: usize| b.min(nonzero)));
    }
    Ok(best)
}

/// `z(X)`: whether some listed field carries a cocycle of `y` with support
/// exactly `x` and weight `|x|`. The default field list is
/// [`default_fields`].
pub fn z_holds(x: &FacetSet, y: &Complex, fields: Option<&[FieldSpec]>, caps: &Caps) -> Result<bool> {
    check_shape(x, y.n(), y.d())?;
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let defaults;
    let fields = match fields {
        Some(f) => f,
        None => {
            defaults = default_fields(y.d(), x.len(), caps)?;
            &defaults
        }
    };
    let amb = Ambient::get(y.n(), y.d());
    let cols = facet_indices(&amb, x);
    let rows = cocycle_constraints(&amb, &cols, x, y);
    for &field in fields {
        let found = match field.validate()? {
            FieldSpec::Prime(q) => z_over(&Fp::new(q)?, Some(q), &amb, &cols, &rows, caps)?,
            FieldSpec::Rational => z_over(&Rationals, None, &amb, &cols, &rows, caps)?,
        };
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rows of the coboundary restricted to `x`, one per face of `y` meeting `x`.
pub(crate) fn cocycle_constraints(amb: &Ambient, cols: &[usize], x: &FacetSet, y: &Complex) -> Vec<Vec<(usize, i64)>> {
    touching_faces(y.n(), x.iter())
        .into_iter()
        .filter(|s| y.contains(s))
        .map(|s| restricted_row(amb, cols, &s))
        .collect()
}

fn z_over<F: Field>(
    field: &F,
    modulus: Option<u64>,
    amb: &Ambient,
    cols: &[usize],
    rows: &[Vec<(usize, i64)>],
    caps: &Caps,
) -> Result<bool> {
    let k = cols.len();
    let basis = kernel_basis(field, &dense_rows(field, rows, k), k);
    if basis.is_empty() || !no_zero_coordinate(field, &basis, k) {
        return Ok(false);
    }
    if inside_low_weight(field, amb, cols, &basis, caps)? {
        return Ok(false);
    }
    let Some(q) = modulus else {
        // an infinite field is not a finite union of proper subspaces
        return Ok(true);
    };
    // Over Z/q a space needs at least q + 1 proper subspaces to be covered.
    if amb.weight_is_support(k) && k as u64 <= q {
        return Ok(true);
    }
    let dim = basis.len() as u32;
    let count = q
        .checked_pow(dim)
        .filter(|&c| c <= caps.subsets)
        .ok_or_else(|| Error::CapExceeded(format!("{q}^{dim} kernel vectors exceed cap {}", caps.subsets)))?;
    let mut coef = vec![0u64; basis.len()];
    for step in 0..count {
        if step > 0 {
            let mut i = 0;
            while coef[i] == q - 1 {
                coef[i] = 0;
                i += 1;
            }
            coef[i] += 1;
        }
        let mut v = vec![field.zero(); k];
        for (c, b) in coef.iter().zip(&basis) {
            let c = field.embed_i64(*c as i64);
            for (x, y) in v.iter_mut().zip(b) {
                *x = field.add(x, &field.mul(&c, y));
            }
        }
        if v.iter().any(|x| field.is_zero(x)) {
            continue;
        }
        if has_full_weight(field, amb, &embed(field, amb, cols, &v), caps)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Cocycles of `y` supported within `x`, as a kernel basis over `field`
/// together with the facet order of its coordinates.
pub(crate) fn local_cocycles<F: Field>(
    field: &F,
    amb: &Ambient,
    x: &FacetSet,
    y: &Complex,
) -> (Vec<usize>, Vec<Vec<F::Elem>>) {
    let cols = facet_indices(amb, x);
    let rows = cocycle_constraints(amb, &cols, x, y);
    let basis = kernel_basis(field, &dense_rows(field, &rows, cols.len()), cols.len());
    (cols, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn admissible_fields() {
        let caps = Caps::default();
        assert_eq!(default_fields(2, 1, &caps).unwrap(), vec![FieldSpec::Rational]);
        assert_eq!(
            default_fields(2, 2, &caps).unwrap(),
            vec![FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational]
        );
        assert_eq!(default_fields(2, 4, &caps).unwrap().len(), 5);
        let tight = Caps { prime_bound: 10, ..caps };
        assert!(default_fields(2, 10, &tight).is_err());
    }

    #[test]
    fn b_of_single_facet() {
        let caps = Caps::default();
        for (n, d) in [(5, 2), (6, 3)] {
            let f = crate::simplex::faces_of_dim(n, d - 1).next().unwrap();
            let x = FacetSet::new(n, d - 1, [f]).unwrap();
            for field in [FieldSpec::Prime(2), FieldSpec::Prime(5), FieldSpec::Rational] {
                assert_eq!(b_of_set(&x, &[field], &caps).unwrap(), Some(n - d));
            }
        }
    }

    #[test]
    fn z_examples() {
        let caps = Caps::default();
        let y = Complex::from_faces(4, 2, [face(&[0, 1, 2])]).unwrap();
        let isolated = FacetSet::new(4, 1, [face(&[0, 3])]).unwrap();
        assert!(z_holds(&isolated, &y, None, &caps).unwrap());
        for q in [2, 3] {
            assert!(z_holds(&isolated, &y, Some(&[FieldSpec::Prime(q)]), &caps).unwrap());
        }
        let covered = FacetSet::new(4, 1, [face(&[0, 1])]).unwrap();
        assert!(!z_holds(&covered, &y, None, &caps).unwrap());
        // the three uncovered edges at vertex 3 form a coboundary (the star)
        let star = FacetSet::new(4, 1, [face(&[0, 3]), face(&[1, 3]), face(&[2, 3])]).unwrap();
        assert!(!z_holds(&star, &y, None, &caps).unwrap());
    }
}

use serde::{Deserialize, Serialize};

use super::ambient::{Ambient, Combinations};
use super::cochain::Cochain;
use crate::error::{Error, Result};
use crate::simplex::binomial;
use crate::zlinalg::{Field, FieldSpec, Fp, Rationals};

/// Limits on the brute-force searches of this module. Exceeding one is an
/// error, never a silent approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest coboundary coset `q^C(n, d-1)` enumerated for weights over `Z/q`.
    pub coset: u64,
    /// Largest number of support patterns, assignments or kernel vectors
    /// examined by one query.
    pub subsets: u64,
    /// Largest prime admitted into a default field list.
    pub prime_bound: u64,
    /// Largest number of partial supports visited by the minimal-cocycle search.
    pub search_states: usize,
    /// Largest support size checked for minimal cocycles.
    pub k_max: usize,
    /// The large-cocycle condition is swept exactly only when there are at
    /// most this many facets.
    pub cond1_facets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coset: 1 << 22,
            subsets: 1 << 22,
            prime_bound: 1 << 20,
            search_states: 2_000_000,
            k_max: 4,
            cond1_facets: 10,
        }
    }
}

/// Minimum support size over the coset `phi + delta(C^{d-2})`.
///
/// Over `Z/q` the whole coset is enumerated, which requires
/// `q^C(n, d-1) <= caps.coset`. Over the rationals the coset is infinite and
/// the minimum is found over support patterns: the smallest `k` such that
/// some `k` facets `S` admit a representative vanishing off `S`.
pub fn weight(phi: &Cochain, caps: &Caps) -> Result<usize> {
    let amb = Ambient::get(phi.n(), phi.d());
    match phi.field() {
        FieldSpec::Prime(q) => {
            let field = Fp::new(q)?;
            coset_min_support(&field, &amb, &phi.dense(&field, &amb), caps)
        }
        FieldSpec::Rational => min_weight_by_support(&Rationals, &amb, &phi.dense(&Rationals, &amb), caps),
    }
}

fn coset_min_support(field: &Fp, amb: &Ambient, phi: &[u64], caps: &Caps) -> Result<usize> {
    let q = field.modulus();
    let r = amb.ridge_count as u32;
    let size = q
        .checked_pow(r)
        .filter(|&s| s <= caps.coset)
        .ok_or_else(|| Error::CapExceeded(format!("coboundary coset of size {q}^{r} exceeds cap {}", caps.coset)))?;
    let mut cur = phi.to_vec();
    let mut support = cur.iter().filter(|&&x| x != 0).count();
    let mut best = support;
    let mut digits = vec![0u64; r as usize];
    for _ in 1..size {
        if best == 0 {
            break;
        }
        // odometer step; a digit wrapping from q-1 to 0 has been added q times
        let mut i = 0;
        loop {
            for &(f, s) in &amb.ridge_cob[i] {
                let was = cur[f] != 0;
                cur[f] = field.add(&cur[f], &field.embed_i64(s));
                match (was, cur[f] != 0) {
                    (true, false) => support -= 1,
                    (false, true) => support += 1,
                    _ => {}
                }
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        best = best.min(support);
    }
    Ok(best)
}

pub(crate) fn support_of<F: Field>(field: &F, phi: &[F::Elem]) -> usize {
    phi.iter().filter(|x| !field.is_zero(x)).count()
}

pub(crate) fn min_weight_by_support<F: Field>(field: &F, amb: &Ambient, phi: &[F::Elem], caps: &Caps) -> Result<usize> {
    let supp = support_of(field, phi);
    if supp == 0 || amb.weight_is_support(supp) {
        return Ok(supp);
    }
    for k in 0..supp {
        if has_representative_within(field, amb, phi, k, caps)? {
            return Ok(k);
        }
    }
    Ok(supp)
}

/// Whether some cochain in the coset of `phi` has support of size at most
/// `k`, where `k` is smaller than the support of `phi`.
pub(crate) fn has_representative_within<F: Field>(
    field: &F,
    amb: &Ambient,
    phi: &[F::Elem],
    k: usize,
    caps: &Caps,
) -> Result<bool> {
    let m = amb.num_facets();
    let count = binomial(m, k);
    if count > caps.subsets {
        return Err(Error::CapExceeded(format!("{count} support patterns of size {k} exceed cap {}", caps.subsets)));
    }
    // The difference to phi is a nonzero coboundary supported inside
    // supp(phi) + S, and such a coboundary touches every vertex.
    let all = if amb.n == 128 { u128::MAX } else { (1u128 << amb.n) - 1 };
    let base = phi.iter().enumerate().filter(|(_, x)| !field.is_zero(x)).fold(0u128, |acc, (f, _)| acc | amb.masks[f]);
    let mut in_s = vec![false; m];
    for s in Combinations::new(m, k) {
        if s.iter().fold(base, |acc, &f| acc | amb.masks[f]) != all {
            continue;
        }
        s.iter().for_each(|&f| in_s[f] = true);
        let hit = amb.coset_meets_support(field, phi, &in_s);
        s.iter().for_each(|&f| in_s[f] = false);
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `phi` has weight equal to its support size.
pub(crate) fn has_full_weight<F: Field>(field: &F, amb: &Ambient, phi: &[F::Elem], caps: &Caps) -> Result<bool> {
    let supp = support_of(field, phi);
    if supp == 0 {
        return Ok(true);
    }
    if amb.weight_is_support(supp) {
        return Ok(true);
    }
    Ok(!has_representative_within(field, amb, phi, supp - 1, caps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{Face, FacetSet};

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weight_examples() {
        let caps = Caps::default();
        let x = FacetSet::new(4, 1, [face(&[1, 3])]).unwrap();
        for field in [FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Rational] {
            let phi = Cochain::indicator(field, &x).unwrap();
            assert_eq!(weight(&phi, &caps).unwrap(), 1);
            assert_eq!(weight(&Cochain::zero(4, 2, field).unwrap(), &caps).unwrap(), 0);
        }
        // the star of vertex 0 is the coboundary of its indicator
        let star = [face(&[0, 1]), face(&[0, 2]), face(&[0, 3])];
        let phi = Cochain::from_ints(4, 2, FieldSpec::Rational, star.iter().map(|f| (f.clone(), 1))).unwrap();
        assert_eq!(weight(&phi, &caps).unwrap(), 0);
        let phi = Cochain::from_ints(4, 2, FieldSpec::Prime(2), star.iter().map(|f| (f.clone(), 1))).unwrap();
        assert_eq!(weight(&phi, &caps).unwrap(), 0);
    }

    #[test]
    fn coset_cap_is_enforced() {
        let caps = Caps { coset: 100, ..Caps::default() };
        let phi = Cochain::zero(8, 2, FieldSpec::Prime(2)).unwrap();
        assert!(matches!(weight(&phi, &caps), Err(Error::CapExceeded(_))));
    }
}

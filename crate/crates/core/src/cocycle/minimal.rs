use std::collections::HashSet;

use super::ambient::Ambient;
use super::sets::{embed, local_cocycles};
use super::weight::{has_full_weight, Caps};
use crate::error::{Error, Result};
use crate::simplex::{Complex, FacetSet};
use crate::zlinalg::{Field, FieldSpec, Fp, Rationals};

/// Facet sets of size at most `k_max` that can support a cocycle of `y`:
/// strongly connected, and every face of `y` meeting the set contains at
/// least two of its members. Independent of the coefficient field.
pub(crate) fn closed_candidates(y: &Complex, k_max: usize, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let amb = Ambient::get(y.n(), y.d());
    let m = amb.num_facets();
    // for every facet, the faces of y containing it, as facet-index lists
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut face_facets: Vec<Vec<usize>> = Vec::with_capacity(y.num_faces());
    for (id, sigma) in y.faces().enumerate() {
        let fs: Vec<usize> = amb.face_facets(sigma).into_iter().map(|e| e.0).collect();
        for &f in &fs {
            faces_of[f].push(id);
        }
        face_facets.push(fs);
    }
    let mut out = Vec::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut states = 0usize;
    for root in 0..m {
        let mut stack = vec![vec![root]];
        while let Some(x) = stack.pop() {
            if !visited.insert(x.clone()) {
                continue;
            }
            states += 1;
            if states > caps.search_states {
                return Err(Error::CapExceeded(format!(
                    "minimal cocycle search visited more than {} partial supports",
                    caps.search_states
                )));
            }
            // A face of y with exactly one member in x forces another of its
            // facets into any cocycle support containing x.
            let mut forced: Option<Vec<usize>> = None;
            for &f in &x {
                for &id in &faces_of[f] {
                    let hits = face_facets[id].iter().filter(|g| x.binary_search(g).is_ok()).count();
                    if hits == 1 {
                        let options: Vec<usize> =
                            face_facets[id].iter().copied().filter(|&g| g > root && g != f).collect();
                        if forced.as_ref().map_or(true, |o| options.len() < o.len()) {
                            forced = Some(options);
                        }
                    }
                }
            }
            let children: Vec<usize> = match forced {
                Some(options) => options,
                None => {
                    out.push(x.clone());
                    let mut nb: Vec<usize> = x
                        .iter()
                        .flat_map(|&f| amb.neighbors(f))
                        .filter(|&g| g > root && x.binary_search(&g).is_err())
                        .collect();
                    nb.sort_unstable();
                    nb.dedup();
                    nb
                }
            };
            if x.len() < k_max {
                for g in children {
                    let mut next = x.clone();
                    let pos = next.binary_search(&g).unwrap_err();
                    next.insert(pos, g);
                    stack.push(next);
                }
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Whether the facets `x` are the support of an inclusion-minimal cocycle of
/// `y` over `field` with weight `|x|`: the cocycles supported within `x`
/// form a line spanned by a vector without zero entries, and that vector
/// cannot be shortened by a coboundary.
fn is_minimal_support<F: Field>(field: &F, amb: &Ambient, x: &FacetSet, y: &Complex, caps: &Caps) -> Result<bool> {
    let (cols, basis) = local_cocycles(field, amb, x, y);
    if basis.len() != 1 || basis[0].iter().any(|v| field.is_zero(v)) {
        return Ok(false);
    }
    has_full_weight(field, amb, &embed(field, amb, &cols, &basis[0]), caps)
}

pub(crate) fn qualifies(field: FieldSpec, amb: &Ambient, x: &FacetSet, y: &Complex, caps: &Caps) -> Result<bool> {
    match field.validate()? {
        FieldSpec::Prime(q) => is_minimal_support(&Fp::new(q)?, amb, x, y, caps),
        FieldSpec::Rational => is_minimal_support(&Rationals, amb, x, y, caps),
    }
}

pub(crate) fn to_facet_set(amb: &Ambient, idx: &[usize]) -> FacetSet {
    FacetSet::new(amb.n, amb.d - 1, idx.iter().map(|&i| amb.facets[i].clone())).expect("valid facets")
}

/// All supports of inclusion-minimal cocycles of `y` over `field` with at
/// most `k_max` facets, ordered by size and then by facet ranks.
///
/// Cocycles that are coboundaries (weight below their support size) are not
/// reported; without that restriction every complete complex would have the
/// vertex stars as minimal cocycles. Supports of inclusion-minimal cocycles
/// are strongly connected, which bounds the search.
pub fn minimal_cocycle_supports(y: &Complex, field: FieldSpec, k_max: usize, caps: &Caps) -> Result<Vec<FacetSet>> {
    let amb = Ambient::get(y.n(), y.d());
    let mut out = Vec::new();
    for idx in closed_candidates(y, k_max, caps)? {
        let x = to_facet_set(&amb, &idx);
        if qualifies(field, &amb, &x, y, caps)? {
            out.push(x);
        }
    }
    Ok(out)
}

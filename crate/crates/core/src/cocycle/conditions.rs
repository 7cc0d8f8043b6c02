use serde::{Deserialize, Serialize};

use super::ambient::{Ambient, Combinations};
use super::minimal::{closed_candidates, qualifies, to_facet_set};
use super::sets::{default_fields, z_holds};
use super::weight::Caps;
use crate::error::Result;
use crate::homology::homology;
use crate::simplex::{isolated_facets, isolated_pairs_sharing_ridge, Complex, FacetSet};

/// Outcome of the three-condition check on a complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// No facet set of size at least `cond1_scale` satisfies `z`. `None` when
    /// the ambient simplex is too large for an exhaustive sweep.
    pub cond1: Option<bool>,
    pub cond1_scale: f64,
    /// No inclusion-minimal cocycle with support size in `2..=cond2_k_max`
    /// over the default fields for that size.
    pub cond2: bool,
    pub cond2_k_max: usize,
    /// A support violating condition 2, if any.
    pub cond2_witness: Option<FacetSet>,
    /// No two isolated facets share a ridge.
    pub cond3: bool,
    pub caps: Caps,
}

impl ConditionReport {
    /// Whether the premises of the rank statement are met: condition 2
    /// passed and condition 1 did not fail.
    pub fn rank_premises_hold(&self) -> bool {
        self.cond2 && self.cond1 != Some(false)
    }
}

pub fn check_conditions(y: &Complex, caps: &Caps) -> Result<ConditionReport> {
    let (n, d) = (y.n(), y.d());
    let amb = Ambient::get(n, d);
    let scale = n as f64 / (3 * d) as f64;

    let mut witness = None;
    'search: for idx in closed_candidates(y, caps.k_max, caps)? {
        if idx.len() < 2 {
            continue;
        }
        let x = to_facet_set(&amb, &idx);
        for field in default_fields(d, x.len(), caps)? {
            if qualifies(field, &amb, &x, y, caps)? {
                witness = Some(x);
                break 'search;
            }
        }
    }

    let cond1 =
        if amb.num_facets() <= caps.cond1_facets { Some(!large_cocycle_exists(y, &amb, scale, caps)?) } else { None };

    Ok(ConditionReport {
        cond1,
        cond1_scale: scale,
        cond2: witness.is_none(),
        cond2_k_max: caps.k_max,
        cond2_witness: witness,
        cond3: isolated_pairs_sharing_ridge(y)?.is_empty(),
        caps: *caps,
    })
}

fn large_cocycle_exists(y: &Complex, amb: &Ambient, scale: f64, caps: &Caps) -> Result<bool> {
    let m = amb.num_facets();
    let smallest = (scale.ceil() as usize).max(1);
    for k in smallest..=m {
        for idx in Combinations::new(m, k) {
            if z_holds(&to_facet_set(amb, &idx), y, None, caps)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether the homology of `y` is torsion-free of rank equal to the number
/// of isolated facets.
pub fn deterministic_rank_check(y: &Complex) -> bool {
    let h = homology(y);
    h.torsion.is_empty() && h.free_rank == isolated_facets(y).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::Face;

    fn face(v: &[u32]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    #[test]
    fn full_skeleton_passes() {
        let y = Complex::full_skeleton(5, 2).unwrap();
        let r = check_conditions(&y, &Caps::default()).unwrap();
        assert_eq!((r.cond1, r.cond2, r.cond3), (Some(true), true, true));
        assert!(deterministic_rank_check(&y));
    }

    #[test]
    fn single_triangle_fails_cond3() {
        let y = Complex::from_faces(4, 2, [face(&[0, 1, 2])]).unwrap();
        let r = check_conditions(&y, &Caps::default()).unwrap();
        assert!(!r.cond3);
    }

    #[test]
    fn empty_complex_rank() {
        // H_1 of the complete graph on 4 vertices has rank 3, not 6; the
        // large-cocycle condition fails, so nothing is contradicted.
        let y = Complex::empty(4, 2).unwrap();
        assert_eq!(homology(&y).free_rank, 3);
        assert!(!deterministic_rank_check(&y));
        let r = check_conditions(&y, &Caps::default()).unwrap();
        assert_eq!(r.cond1, Some(false));
        assert!(r.cond2);
        assert!(!r.cond3);
    }

    #[test]
    fn projective_plane_needs_larger_supports() {
        // Over Z/2 its cocycles are the cycles of the Petersen graph, girth 5.
        let y = crate::homology::tests::rp2();
        assert!(!deterministic_rank_check(&y));
        let r = check_conditions(&y, &Caps::default()).unwrap();
        assert_eq!(r.cond1, None);
        assert!(r.cond2);
        let r = check_conditions(&y, &Caps { k_max: 5, ..Caps::default() }).unwrap();
        assert!(!r.rank_premises_hold());
        assert_eq!(r.cond2_witness.map(|x| x.len()), Some(5));
    }
}

//! Faces, complexes with complete codimension-one skeleton, and the
//! combinatorial predicates built on them.

mod complex;
mod dual;
mod face;
mod union_find;

pub use complex::{isolated_facets, isolated_pairs_sharing_ridge, Complex, FacetSet};
pub use dual::{
    dual_graph, enumerate_strongly_connected, faces_strongly_connected, is_strongly_connected, strong_count_bound,
    DualGraph, StronglyConnectedSets, ENUM_MAX_K, ENUM_MAX_N,
};
pub use face::{binomial, face_rank, face_unrank, faces_of_dim, Face, Faces};
pub use union_find::UnionFind;

//! Exact linear algebra over the integers, prime fields and the rationals.

mod bound;
mod field;
mod kernel;
mod primes;
mod rank;
mod snf;
mod sparse;

pub use bound::{
    cokernel_torsion, complete_to_square, matrixbound_audit, torsion_bound_holds, MatrixBoundAudit, TorsionBound,
};
pub use field::{dense_rank, kernel_basis, left_null_space, rational_mod, rref, Field, FieldSpec, Fp, Rationals};
pub use kernel::{AnyKernelTracker, KernelTracker};
pub use primes::{is_prime, primes_up_to, CHECK_PRIME};
pub use rank::{rank_mod_q, rank_rational};
pub use snf::{smith_normal_form, SmithForm, Transforms};
pub use sparse::SparseIntMatrix;

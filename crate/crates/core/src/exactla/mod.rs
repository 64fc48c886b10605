//! Exact linear algebra over prime fields.
//!
//! Dense matrices back every Hom/Ext solve; the sparse column format is used
//! for operators on tensor powers, which have very few non-zeros per column.

mod dense;
mod field;
mod poly;
mod sparse;

pub use dense::{Mat, Subspace};
pub use field::{is_prime, Fp, MAX_PRIME};
pub use poly::Poly;
pub use sparse::{axpy_sparse, SparseMat, SparseVec};

//! Exact linear algebra over the rationals and prime fields.

pub mod dense;
pub mod field;
pub mod module_ops;
pub mod sparse;

pub use dense::{inverse, mat_mul, nullspace, rank, rref, solve, solve_augmented, Echelon, Solution, Subspace};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals, MAX_PRIME};
pub use module_ops::{
    column_space, equivariant_retraction_exists, intersect, invariant_closure, invariant_lines, is_invariant, LineFamily, Retraction,
    RetractionCertificate,
};
pub use sparse::SparseMatrix;

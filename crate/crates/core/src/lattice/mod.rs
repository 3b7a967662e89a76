//! Exact integer linear algebra: lattice vectors, integer matrices and their
//! Hermite/Smith normal forms.

mod matrix;
mod normal_form;
mod vector;

pub use matrix::IntMatrix;
pub use normal_form::{
    coordinates_in_basis, hermite_normal_form, integer_kernel, lattice_basis, rank,
    saturated_basis, smith_normal_form, sublattice_index, unimodular_inverse, SpanLattice,
};
pub use vector::{DualVector, LatticeVector, Scalar};

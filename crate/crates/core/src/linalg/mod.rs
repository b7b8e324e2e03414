//! Exact integer linear algebra: determinants, principal minors, integer kernels, Hermite and
//! Smith normal forms. No floating point anywhere.

mod det;
pub(crate) mod lattice;
mod matrix;
pub(crate) mod snf;

pub use det::{
    det, principal_minors, proper_principal_minors_positive, proper_principal_minors_positive_in,
    MinorScope, MinorTest,
};
pub use lattice::{integer_kernel, kernel_complement_basis};
pub use matrix::{IntMatrix, MatrixJson};
pub use snf::{smith_normal_form, SnfResult};

//! Pointwise generalized complex linear algebra.

pub mod gcs;
pub mod reduce;
pub mod subspace;

pub use gcs::{
    b_exp, b_transform, check_gcs, from_complex, from_symplectic, i_eigenbundle, map_to_two_form,
    pairing_matrix, two_form_map, GcsResidual, GcsValue,
};
pub use reduce::{linear_reduce, LinearReductionResult};
pub use subspace::{pure_spinor_line, IsotropicSubspace, PureSpinorLine, RANK_TOL};

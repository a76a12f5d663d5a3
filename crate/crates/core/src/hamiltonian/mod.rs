//! Hamiltonian torus actions on generalized complex manifolds and their reduction.

pub mod cut;
pub mod moment;
pub mod reduction;
pub mod structure;

pub use moment::{
    b1_contraction_residual, b1_form, b_transform_invariance, check_hamiltonian_action,
    connection_residual, moment_values, BInvarianceReport, HamiltonianReport, MomentMapSpec,
};
pub use structure::{b_exp_jet, two_form_map_jet, GcsField, MatEvaluator};
pub use reduction::{
    companion_descent, connection_independence, dh_check, dh_terms, horizontal_part, reduce,
    reduced_gcs_residual, spinor_descend, ConnectionReport, DhTerms, ReductionDiagnostics,
    ReductionOptions, ReductionResult, ReductionSetup,
};
pub use cut::{block_compatibility, cut, cut_setup, cut_space, plane, CutReport, CutSpace};

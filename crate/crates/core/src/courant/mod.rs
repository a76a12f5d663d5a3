//! Twisted Courant brackets, generalized symmetries and their actions.

pub mod bracket;
pub mod infinitesimal;
pub mod spinor;
pub mod symmetry;

pub use bracket::{courant_jet, gv_residual, AxiomReport, TwistedCourant};
pub use infinitesimal::{
    alpha_coboundary, alpha_cochain, coboundary_residual, generator_residual, gsym_exp, gsym_path,
    inf_action, psi_h, twisted_lie_bracket, ExpOptions, InfPath, InfSymmetry,
};
pub use spinor::{
    complex_residual, d_h_compatibility_residual, exp_neg_wedge, spinor_act, spinor_inf_act,
    twisted_d_complex,
};
pub use symmetry::GenSymmetry;

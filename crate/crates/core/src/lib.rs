//! Chart-level computations for twisted generalized complex geometry.

pub mod error;
pub mod exterior;
pub mod jet;

pub use error::{GeomError, Result};
pub mod calculus;
pub mod jetmat;
pub mod linear;
pub mod courant;
pub mod hamiltonian;
pub mod fixtures;
pub mod sampling;
pub mod polynomial;
pub mod rational;
pub mod cohomology;

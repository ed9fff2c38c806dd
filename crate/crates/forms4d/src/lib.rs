//! Numerical engine for the Clifford algebra of differential forms on 4D
//! pseudo-Riemannian charts, together with a verification harness that
//! checks curvature, gauge, and conservation identities of the associated
//! field equations on sampled grids.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};

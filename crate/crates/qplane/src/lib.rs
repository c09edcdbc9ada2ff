//! Exact normal-form computation on the quantum group `SU_q(3)`, the quantum
//! projective plane `CP^2_q`, its bigraded differential calculus, monopole
//! line bundles and the anti-selfdual instanton family.

pub mod bundles;
pub mod calculus;
pub mod cli;
pub mod families;
pub mod instanton;
pub mod qalgebra;
pub mod report;
pub mod sample;
pub mod scalars;
pub mod symmetry;

mod error;
pub use error::Error;

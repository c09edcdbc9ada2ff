//! Monopole line bundles `L_N` over `CP^2_q` and their Grassmannian connections.

mod monopole;

pub use monopole::{
    curvature_factor, curvature_monopole, curvature_monopole_full, dd_psi_residual, follows_residuals,
    hermitian_bridge_residual, hermiticity_residual, index_set, left_leibniz_residual, left_right_residual, monopole,
    nabla, nabla_left, MonopoleData, DEFAULT_BOUND,
};

//! The `t`-family of instantons on `L_1 + L_{-1}` and the verification of its curvature.

mod curvature;
mod data;
mod mixed;

pub use curvature::{
    a_function, a_numeric, b_function, b_numeric, connection_one_form, curvature_components, eta, eta_prime,
    eta_prime_vector, eta_vector, sd_form, verify_connection, verify_curvature, InstantonPipeline, CONNECTION_STEPS,
    CURVATURE_STEPS,
};
pub use data::{phi_closed, phi_form, phi_star_closed, InstantonData};
pub use mixed::{form_x_grade, poly_in_x, x_grade, MixedElement, MixedTerm, GRADE_WINDOW};

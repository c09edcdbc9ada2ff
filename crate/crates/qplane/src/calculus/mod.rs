//! The bigraded differential calculus on `CP^2_q`.

mod form;
mod ops;
mod params;
mod table;

pub use form::{Bidegree, Form, FormElement};
pub use ops::{
    asd_check, d, d_form, del, delbar, form_star, hermitian, hodge, j, kahler, kahler_expected, kahler_full, real_star,
    sd_part, slot_weights, wedge, wedge_forms,
};
pub use params::CalculusParams;

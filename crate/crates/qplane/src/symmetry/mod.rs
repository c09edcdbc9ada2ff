//! Canonical `U_q(su(3))` actions, the Hopf structure and the left coaction.

mod hopf;
mod tensor;
mod uq;

pub use hopf::{antipode, antipode_inv, coaction_l, coaction_l_literal, coproduct, counit};
pub use tensor::TensorElement;
pub use uq::{act_left, act_right, is_in_plane, is_in_sphere, Side, UqGen, UqWord};

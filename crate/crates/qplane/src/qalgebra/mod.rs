//! `O(SU_q(3))` as a confluent rewriting system with exact normal forms.

mod classical;
mod element;
mod gens;
pub mod kb;
mod ring;
mod system;
mod word;

pub use classical::{random_su3, ClassicalPoint, RawExpr};
pub use element::AlgebraElement;
pub use gens::{Gen, GenOrder};
pub use ring::{ring, Ring};
pub use system::{
    cubic_relation, quadratic_relations, quantum_determinant, truncated_completion, ConfluenceReport, RewriteSystem,
};
pub use word::{NWord, Word};

//! Finite Heyting algebras as downset lattices of finite posets, their
//! filters, and the models of L built on them.

mod filter;
mod heyting;
mod model;
mod poset;

pub use filter::{enumerate_filters, enumerate_ultrafilters, Filter};
pub(crate) use heyting::downset_algebra;
pub use heyting::{
    enumerate_heyting, heyting_from_poset, AlgebraError, HeytingAlgebra, HeytingTables,
    DEFAULT_MAX_ALGEBRA, MAX_ALGEBRA,
};
pub use model::{
    check_model_conditions, enumerate_modal_ops, enumerate_models, eval, satisfies, trivial_box,
    two_element_model_of, Assignment, EvalError, LModel, ModelViolation, MAX_MODAL_ALGEBRA,
};
pub use poset::{posets_with_small_lattice, FinitePoset, PosetError};

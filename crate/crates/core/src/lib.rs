//! Proof kernel and finite semantics for a modal logic in which the box is
//! a predicate for intuitionistic truth over a classical base.

pub mod algebra;
pub mod formula;
pub mod gen;
pub mod io;
pub mod ipc;
pub mod lkernel;
pub mod semlab;

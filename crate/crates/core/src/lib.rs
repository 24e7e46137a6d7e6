//! Gap-producing reductions from circuit satisfiability to sparse-vector
//! problems over finite fields, the reals and integer lattices, with exact
//! brute-force oracles for certifying the produced instances.

pub mod budget;
pub mod circuit;
pub mod codes;
pub mod error;
pub mod field;
pub mod gadget;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod reduce;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{make_field, Felem, Field, FieldSpec, Rationals};
pub use matrix::{MatFq, MatQ, MatZ, Matrix};

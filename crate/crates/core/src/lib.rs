//! Factorization of `x^n + 1` over finite fields of odd characteristic by the
//! recursive coset method, with counting and enumeration of negacyclic codes.

pub mod cli;
pub mod cosets;
pub mod error;
pub mod factorizer;
pub mod gf;
pub mod negacyclic;
pub mod nt;
pub mod poly;

pub use error::{Error, Result};
pub use gf::{make_field, FieldElement, FieldSpec};
pub use poly::Poly;

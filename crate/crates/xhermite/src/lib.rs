//! Exact construction of exceptional Hermite polynomials, their intertwiners,
//! lowering operators and recurrence relations, over the rationals.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod exactpoly;
pub mod hermite_core;
pub mod intertwiners;
pub mod operators;
pub mod recurrence;
pub mod verify;

pub use error::{Error, Result};

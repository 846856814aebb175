//! Exact computations on pairs of a finite-dimensional associative algebra
//! and a linear functional: characteristic forms, stabilizers, spectra,
//! Jordan filtrations, type classification, index and tensor products.

pub mod algebra;
pub mod arith;
pub mod error;
pub mod functional;
pub mod spectrum;
pub mod suites;
pub mod tensor_lab;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};

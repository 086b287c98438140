//! Exact q-expansion engine and verification harness for the third-order
//! mock theta functions f and omega.
//!
//! The crate provides sparse formal q-expansions with exact rational
//! coefficients on fractional exponent lattices, the named series built on
//! them (f, omega, the unary theta components, weight-2 Eisenstein vectors),
//! finite-dimensional unitary representation arithmetic over the 24th
//! cyclotomic field, the holomorphic-projection coefficient formula with
//! high-precision fixed-point numerics, and exact verification of the
//! divisor-sum recursions for the coefficients of f and omega.

pub mod arith;
pub mod cache;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod fixed;
pub mod forms;
pub mod holproj;
pub mod numeric;
pub mod rat;
pub mod relations;
pub mod rep;
pub mod series;

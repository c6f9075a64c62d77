//! Exact computations for filtered Lie algebras.
//!
//! The crate works entirely over the rationals and covers
//!
//! * admissibility of a filtered Lie algebra (conditions (A) and (B),
//!   continuation of a filtration from its non-positive part),
//! * Lie algebra cohomology `H^k_l(m, gr g)` by homogeneity degree,
//! * Tanaka prolongation of a graded nilpotent algebra with a degree zero
//!   derivation subalgebra,
//! * codifferentials (Kostant and adjoint) and the normalization conditions
//!   they induce, including pointwise normalization of a curvature value.
//!
//! Each capability has a runnable example, e.g. `cargo run --example
//! cohomology_tables`. The `filtered-lie` binary runs the whole pipeline on a
//! catalog model or an algebra file and prints a report.

pub mod cli;
pub mod cochains;
pub mod error;
pub mod exactla;
pub mod liealg;
pub mod models;
pub mod normcond;
pub mod prolong;

pub use error::{Error, Result};

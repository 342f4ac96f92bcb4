//! Non-commutative rational expressions evaluated on tuples of complex
//! matrices.
//!
//! The crate covers the whole pipeline:
//!
//! - [`expr`] and [`parser`]: the expression language and its text form;
//! - [`matrix`]: dense complex linear algebra with guarded inversion, operator
//!   norms and Schur-complement block inversion;
//! - [`eval`]: evaluation at matrix tuples with domain checking;
//! - [`realization`]: `u A^-1 v` realizations with polynomial entries;
//! - [`ensembles`]: seeded GUE, Ginibre and Haar unitary samplers;
//! - [`idtest`]: randomized identity testing of rational expressions;
//! - [`lab`]: trace and norm convergence experiments against semicircle
//!   oracles, including the outlier construction;
//! - [`cli`] and [`formats`]: the `ncrat` command line and its file formats.

// Threshold checks are written `!(x > t)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod ensembles;
pub mod eval;
pub mod expr;
pub mod formats;
pub mod idtest;
pub mod lab;
pub mod matrix;
pub mod parser;
pub mod realization;

pub use eval::{evaluate, in_domain, DomainError, EvalError, MatrixTuple};
pub use expr::{Expression, Letter, VariableInventory};
pub use matrix::{ComplexMatrix, DEFAULT_TOL};
pub use num_complex::Complex64;
pub use parser::{parse, ParseError};

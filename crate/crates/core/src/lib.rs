//! Spectral collocation eigensolver for regular and singular Schrodinger
//! problems.
//!
//! The library discretizes operators of the form `-u'' + q(x) u` on a finite
//! interval, the half line, or the real line, solves the resulting dense
//! eigenproblem, and provides the accuracy diagnostics (eigenvalue drift,
//! coefficient decay, orthogonality deficiency) needed to decide which of the
//! computed eigenvalues can be trusted.
//!
//! Pipeline: [`diffmat`] builds collocation grids and differentiation
//! matrices, [`maps`] transforms them onto the physical domain, [`operator`]
//! assembles the discrete operator with boundary conditions enforced by row
//! and column deletion, [`eig`] solves it, [`diagnostics`] grades the result,
//! and [`problems`] carries the benchmark catalog. [`cli`] wires everything
//! into the batch front end.

// Argument guards are written `!(x > 0.0)` on purpose: the negation rejects
// NaN, which `x <= 0.0` would wave through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![forbid(unsafe_code)]

pub mod cli;
pub mod diagnostics;
pub mod diffmat;
pub mod eig;
pub mod error;
pub mod maps;
pub mod matrix;
pub mod operator;
pub mod problems;

pub use error::{Error, Result};

//! Exact spectra, wavefunctions and edge-state phase diagrams of anisotropic
//! square and triangular tight-binding ribbons.
//!
//! The analytic side reduces each Bloch Hamiltonian to a secular equation in
//! Chebyshev polynomials of the second kind ([`chebpoly`]); the dense
//! Hermitian eigensolver in [`hamiltonian`] is an independent oracle used to
//! check every closed form.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebpoly;
pub mod classify;
pub mod error;
pub mod hamiltonian;
pub mod scan;
mod secular;
pub mod square_ribbon;
pub mod triangle_ribbon;

pub use error::{Error, Result};
pub use num_complex::Complex64;

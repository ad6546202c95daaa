//! Exact computer algebra for the ring of Weyl invariant E8 Jacobi forms.
//!
//! The symbolic layer works over arbitrary-precision rationals with sparse
//! multivariate (Laurent) polynomials. On top of it sit binary forms and
//! transvectants, the Roberts correspondence between covariants and
//! semiinvariants, the a/b and c/d coordinate rings of Jacobi forms with
//! their translation maps, the 194-generator catalog, and the weight/index
//! basis construction. A floating-point layer cross-validates the closed
//! form identities numerically.

pub mod analytic;
pub mod basis;
pub mod binary_forms;
pub mod catalog;
pub mod data;
pub mod jacobi_ring;
pub mod linalg;
pub mod poly;
pub mod semiinvariants;

pub use linalg::ExactMatrix;
pub use poly::{Poly, Rational, Var};

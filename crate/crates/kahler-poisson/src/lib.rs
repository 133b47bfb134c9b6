//! Exact symbolic computations for Kähler–Poisson algebras built on the
//! rational functions in two variables.
//!
//! The algebra carries the canonical Poisson bracket `{x, y} = x` together
//! with a symmetric 2x2 metric of rational functions. This crate provides:
//!
//! - exact arithmetic over the Gaussian rationals Q(i), sparse bivariate
//!   polynomials, and canonical-form rational functions ([`field`]);
//! - Poisson brackets for linear structures and their normalization to the
//!   canonical one ([`poisson`]);
//! - verification of the defining metric identity and the scalar eta
//!   ([`kp`]);
//! - the classified Poisson automorphisms (scale-shear and Möbius-type)
//!   with composition, inversion and Jacobians ([`automorphism`]);
//! - metric transport, isomorphism verification, and certificate-producing
//!   deciders for constant, x-dependent and y-dependent metric families,
//!   plus a brute-force search oracle ([`isomorphism`]);
//! - an expression parser/printer ([`expr`]) and a JSON command-line front
//!   end ([`cli`], exposed through the `kp` binary).
//!
//! Every value is immutable and every operation is a pure function over
//! exact representations, so all identities are checked as representation
//! equality, never numerically.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod automorphism;
pub mod cli;
mod error;
pub mod expr;
pub mod field;
pub mod isomorphism;
pub mod kp;
pub mod matrix;
pub mod poisson;

pub use automorphism::Automorphism;
pub use error::{Error, Result};
pub use field::{GaussianRational, Polynomial2, RationalFunction, Var};
pub use isomorphism::{Constraint, IsoCertificate, Reason, SearchBounds, Verdict};
pub use kp::{KPAlgebra, Metric};
pub use matrix::Mat2;
pub use poisson::{LinearMap, PoissonStructure};

//! Exact arithmetic: Gaussian-rational scalars, sparse bivariate
//! polynomials, and canonical-form rational functions in x and y.

pub mod gaussian;
pub mod poly;
pub mod ratfunc;

pub use gaussian::GaussianRational;
pub use poly::{Monomial, Polynomial2, Var};
pub use ratfunc::RationalFunction;

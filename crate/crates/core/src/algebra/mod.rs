//! Exact arithmetic substrate: the coefficient field ℚ(i)(μ), sparse
//! multivariate polynomials, differential operators, and linear algebra.

pub mod coeff;
pub mod diffop;
pub mod gauss;
pub mod matrix;
pub mod poly;
pub mod symplectic;
pub mod upoly;

pub use coeff::Coeff;
pub use diffop::DiffOp;
pub use gauss::GaussRat;
pub use matrix::Matrix;
pub use poly::{Monomial, Poly, Space, Term, DEFAULT_MAX_DEGREE};
pub use symplectic::{darboux, Darboux};
pub use upoly::UPoly;

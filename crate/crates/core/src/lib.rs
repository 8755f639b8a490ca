//! Exact generalized Moyal star products and brackets on polynomial
//! phase-space symbols, with decision procedures for star-product and
//! bracket kernels.
//!
//! Conventions used throughout:
//!
//! * `μ = iħ/2` is a formal symbol; every coefficient lives in ℚ(i)(μ).
//! * Phase space is `z = (q1..qn, p1..pn)`; operators satisfy
//!   `[q̂_i, p̂_j] = 2μ·δ_ij`.
//! * Frequency variables `σ = (η, ξ)` are written `u1..u2n` (first slot),
//!   `v1..v2n` (second slot) and `w1..w2n` (third slot).
//! * `σ′∧σ = J_ij σ′^i σ^j` with `J = [[0, I], [−I, 0]]`; the Moyal kernel is
//!   `b = σ′ᵀ·(μJ)·σ`, so `q ⋆ p = qp + μ`.
//! * Bracket kernels `A(σ,σ′)` have linear part `σᵀ·ω·σ′`; for Moyal and
//!   Poisson brackets `ω = −J`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod kernel;
pub mod lie;
pub mod spaces;
pub mod star;
pub mod weyl;

pub use algebra::{Coeff, DiffOp, GaussRat, Matrix, Monomial, Poly, Space, Term};
pub use error::{Error, Result, Stage};
pub use star::{bidifferential, bracket, classical_limit, poisson, star, u_map, PhasePoly, StarKernel};

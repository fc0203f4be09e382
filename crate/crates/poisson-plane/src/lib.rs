//! Exact computer algebra for the Lie algebra of polynomials in two
//! variables under the standard Poisson bracket, together with the
//! structures built on top of it: iterated adjoint operators and their
//! coefficient recursion, Lie subalgebra closures with gap and
//! codimension reports, the extension of the algebra by the grading
//! derivation, triangular automorphisms of the plane acting on point
//! tuples, and derivations of Danielewski surface coordinate rings.
//!
//! All coefficients are arbitrary-precision rationals; every identity
//! checked by this crate is an exact polynomial identity.

pub mod adjoint;
pub mod automorphisms;
pub mod closure;
pub mod danielewski;
mod echelon;
pub mod error;
pub mod hat;
pub mod poly;
pub mod rat;
pub mod upoly;

pub use error::Error;
pub use poly::{BivariatePoly, Mono, PlaneVectorField, Var};
pub use rat::Rat;
pub use upoly::UnivariatePoly;

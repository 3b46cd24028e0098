//! Exact coefficient arithmetic: rationals, multivariate polynomials, and
//! reduced rational functions over Q or a parameter field Q(p_1, ..., p_k).
//!
//! Parameters are ordinary variables of the [`VarTable`] tagged as such; a
//! coefficient in Q(p) is a [`RationalFunction`] in which no base variable
//! occurs.

mod gcd;
mod poly;
mod ratfun;
mod vars;

pub use gcd::{content_in, gcd, primitive_part_in};
pub use poly::{Monomial, PolyDisplay, Polynomial};
pub use ratfun::{RatDisplay, RationalFunction};
pub use vars::{VarRole, VarTable};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

//! The Weyl algebra `D_n` and the rational Weyl algebra `R_n`.
//!
//! Elements of `D_n` are stored normally ordered (all `x` left of all `d`),
//! elements of `R_n` in the standard form `sum_b c_b(x) d^b`. Both carry an
//! `Arc` of the [`WeylContext`] that fixes variable names, parameters, and
//! the weight vector of the term order.

mod context;
mod element;
mod rational;

pub use context::{WeylContext, WeylMonomial};
pub use element::WeylElement;
pub use rational::RationalWeylElement;

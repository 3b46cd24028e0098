//! Connection matrices of left ideals in the Weyl algebra.
//!
//! Given a left ideal `I` of the Weyl algebra `D_n = Q[x]<d>` (optionally
//! over a parameter field such as `Q(eps)`), the crate computes a reduced
//! Groebner basis for the elimination order `(0, v)` refined lexicographically,
//! the standard monomials and holonomic rank of `R_n I` where
//! `R_n = Q(x)<d>`, normal forms in `R_n`, and the first-order system
//! `d_i F = A_i F` in a chosen basis of `R_n / R_n I`. Gauge transformations,
//! integrability checks, and epsilon-factorization checks operate on the
//! resulting matrices.
//!
//! ```
//! use connmat::prelude::*;
//!
//! let ctx = WeylContext::with_int_weights(&["x", "y"], &[], &[2, 1]).unwrap();
//! let ideal = WeylIdeal::parse(&ctx, &["x*dx^2 - y*dy^2 + dx - dy", "x*dx + y*dy + 1"]).unwrap();
//! assert_eq!(holonomic_rank(&ideal), Rank::Finite(2));
//! let sys = connection_matrices(&ideal).unwrap();
//! assert!(sys.is_integrable());
//! ```

pub mod arith;
pub mod connection;
pub mod error;
pub mod frontend;
pub mod groebner;
pub mod weyl;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::arith::{BigRational, Polynomial, RationalFunction, VarTable};
    pub use crate::connection::{
        connection_matrices, connection_matrices_in_basis, gauge_matrix, gauge_transform, is_integrable,
        ConnectionSystem, GaugeMatrix, Matrix, OneForm,
    };
    pub use crate::error::{Error, Result};
    pub use crate::groebner::{
        buchberger, holonomic_rank, normal_form, standard_monomials, GroebnerBasis, Rank, WeylIdeal,
    };
    pub use crate::weyl::{RationalWeylElement, WeylContext, WeylElement, WeylMonomial};
}

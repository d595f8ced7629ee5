//! Truncated multivariate formal power series and the exponential formulas
//! for maps tangent to the identity.
//!
//! A map `F = z + (higher order)` is `exp(A) z` for a unique vector field
//! `A = a(z) d/dz` of order at least 2. From that generator this crate
//! computes the formal inverse `exp(-A) z`, the flow `F_t = exp(tA) z`, and
//! the Jacobian through
//!
//! ```text
//! J(F_t)  = exp(t(A + div a)) 1
//! JF_t    = exp(t(A + R_Ja)) Id
//! ```
//!
//! all exactly over the rationals modulo a truncation degree. Each formula
//! is also computed directly so the two can be compared.
//!
//! ```
//! use jetflow::prelude::*;
//!
//! // F = (z1 + z2^2, z2) has generator a = (z2^2, 0)
//! let f = MapTuple::new(vec![
//!     Series::from_terms(2, 6, [(vec![1, 0], int(1)), (vec![0, 2], int(1))]).unwrap(),
//!     Series::var(2, 6, 1),
//! ])
//! .unwrap();
//! let a = infer_generator_recursive(&f).unwrap();
//! assert_eq!(a.component(0).to_string(), "z2^2");
//! assert_eq!(jacobian_det_exp(&a, &int(1)).unwrap(), Series::one(2, 6));
//! ```

pub mod cli;
pub mod coeff;
pub mod deformation;
pub mod error;
pub mod generator;
pub mod inversion;
pub mod jacobian;
pub mod matrix;
pub mod operators;
pub mod random;
pub mod report;
pub mod series;
pub mod structure;
pub mod suite;

pub use coeff::{int, rat, Coeff, Rational, TPoly};
pub use error::{JetError, Result};
pub use matrix::{ConstantMatrix, SeriesMatrix};
pub use operators::Derivation;
pub use series::{Exponent, MapTuple, Order, Series};

/// Everything needed for typical use.
pub mod prelude {
    pub use crate::coeff::{int, rat, Coeff, Rational, TPoly};
    pub use crate::deformation::{
        check_field_transport, check_flow_ode, check_jacobian_ode, deform, specialize_series, t_derivative,
        DeformedMap,
    };
    pub use crate::error::{JetError, Result};
    pub use crate::generator::{infer_generator_log, infer_generator_recursive, verify_generator};
    pub use crate::inversion::{invert_exp, invert_iterates, invert_solve};
    pub use crate::jacobian::{
        jacobian_det_direct, jacobian_det_exp, jacobian_det_exp_general, jacobian_matrix_direct,
        jacobian_matrix_exp, keller_check, KellerReport,
    };
    pub use crate::matrix::{ConstantMatrix, SeriesMatrix};
    pub use crate::operators::{
        exp_apply, exp_apply_augmented_matrix, exp_apply_augmented_scalar, exp_apply_map, exp_flow, exp_numeric,
        Derivation,
    };
    pub use crate::report::Report;
    pub use crate::series::{MapTuple, Order, Series};
    pub use crate::structure::{
        bcw_case, liouville_check, parity_check, phi_embed, phi_embed_literal, LiouvilleMode,
    };
}

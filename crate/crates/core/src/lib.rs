//! Bivariate means, their characteristic functions, and a numerical lab for
//! ordering chains, best-possible constants and cancelling means.
//!
//! Every mean here is symmetric and homogeneous, so it is determined by its
//! characteristic function `phi(t) = M(1 - t, 1 + t)`. Evaluation always goes
//! through that form (see [`canonical`]), which keeps the removable
//! singularities on the diagonal and the overflow of `a^s` out of the way.

pub mod axioms;
pub mod canonical;
pub mod characteristics;
pub mod error;
pub mod families;
pub mod grid;
pub mod lab;
pub mod mean;
pub mod parse;

pub use axioms::{validate_mean, MeanAxiomReport};
pub use canonical::CanonicalPoint;
pub use error::{Error, Result};
pub use families::{
    gen_log, holder, k_mean, lambda_mean, lehmer, power_transform, stolarsky, weighted_holder,
    Family, FamilyKind, WeightedPower,
};
pub use grid::{GridOptions, GridSpec};
pub use mean::{
    dual, eval_elementary, phi, BivariateMean, Elementary, FnMean, Mean, MeanKind, Stabilization,
};
pub use parse::{parse_family, parse_mean_expr};

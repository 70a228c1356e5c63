//! Exact identities between the families, evaluated numerically.

use serde::{Deserialize, Serialize};

use crate::canonical::{check_positive, Canon};
use crate::error::{Error, Result};
use crate::families::{gen_log, lehmer, stolarsky};
use crate::mean::{Elementary, Mean};

/// Both sides of
/// `ln(I_{s,s}(a,b) / S(a,b)) = (l_{-1/s}(a^s, b^s) / L(a^s, b^s) - 1) / s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`.
    pub residual: f64,
    /// `|residual| / (|lhs| + 1e-15)`.
    pub relative: f64,
}

/// Residual of the Stolarsky-diagonal / Lehmer identity at `(a, b, s)`.
///
/// The right side is evaluated at `(a^s, b^s)` in canonical form, i.e. at
/// `t' = tanh(|s| atanh t)`, so no power of `a` or `b` is formed.
///
/// ```
/// let r = meanlab::lab::stolarsky_lehmer_residual(1.0, 3.0, 3.0).unwrap();
/// assert!((r.lhs + 0.016425942371378614).abs() < 1e-15);
/// assert!(r.relative < 1e-12);
/// ```
pub fn stolarsky_lehmer_residual(a: f64, b: f64, s: f64) -> Result<IdentityResidual> {
    check_positive(a, b)?;
    if s == 0.0 || !s.is_finite() {
        return Err(Error::Domain(format!(
            "s must be finite and nonzero, got {s}"
        )));
    }
    let diag = stolarsky(s, s)?;
    let lehm = lehmer(-1.0 / s)?;
    let (c, _) = Canon::from_pair(a, b);
    let lhs = diag.log_phi(&c) - Mean::elementary(Elementary::S).log_phi(&c);
    let cs = Canon::from_z(s.abs() * c.z);
    let ratio_ln = lehm.log_phi(&cs) - Mean::elementary(Elementary::L).log_phi(&cs);
    let rhs = ratio_ln.exp_m1() / s;
    let residual = lhs - rhs;
    Ok(IdentityResidual {
        lhs,
        rhs,
        residual,
        relative: residual.abs() / (lhs.abs() + 1e-15),
    })
}

/// `L_3^3 / A^3` at `(1 - t, 1 + t)`, directly and from `t (3 + t^2) / (3 atanh t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub t: f64,
    pub direct: f64,
    pub closed: f64,
    /// `|direct - closed| <= 1e-12 * closed`.
    pub agree: bool,
}

/// The cube ratio of the order-3 generalized logarithmic mean to `A`; it is
/// below one for every `0 < t < 1`.
pub fn genlog3_ratio(t: f64) -> Result<RatioCheck> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t must lie in (0, 1), got {t}")));
    }
    let direct = (3.0 * gen_log(3.0)?.ln_phi(t)?).exp();
    let closed = t * (3.0 + t * t) / (3.0 * t.atanh());
    Ok(RatioCheck {
        t,
        direct,
        closed,
        agree: (direct - closed).abs() <= 1e-12 * closed,
    })
}

/// `g(t) = ln(1 + t^2) - (1 + t) ln(1 + t) - (1 - t) ln(1 - t)`, which is
/// `2 ln(A_2 / S)` at `(1 - t, 1 + t)`.
pub fn holder2_gini_gap(t: f64) -> f64 {
    let c = Canon::from_t(t);
    (t * t).ln_1p() - c.entropy()
}

/// Central-difference second derivative of [`holder2_gini_gap`] against the
/// closed form `-8 t^2 / ((1 + t^2)(1 - t^4))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureCheck {
    pub t: f64,
    pub h: f64,
    pub finite_difference: f64,
    pub closed: f64,
    pub relative_error: f64,
}

pub fn holder2_gini_curvature(t: f64, h: f64) -> Result<CurvatureCheck> {
    if !(t - h > 0.0 && t + h < 1.0 && h > 0.0) {
        return Err(Error::Domain(format!(
            "need 0 < t - h and t + h < 1, got t = {t}, h = {h}"
        )));
    }
    let fd =
        (holder2_gini_gap(t + h) - 2.0 * holder2_gini_gap(t) + holder2_gini_gap(t - h)) / (h * h);
    let t2 = t * t;
    let closed = -8.0 * t2 / ((1.0 + t2) * (1.0 - t2 * t2));
    Ok(CurvatureCheck {
        t,
        h,
        finite_difference: fd,
        closed,
        relative_error: ((fd - closed) / closed).abs(),
    })
}

//! The canonical `(1 - t, 1 + t)` parametrization.
//!
//! Every homogeneous symmetric mean satisfies `M(a, b) = c * phi(t)` with
//! `c = (a + b) / 2` and `t = |b - a| / (a + b)`. The evaluators in this crate
//! work on `ln phi` and carry three quantities that stay accurate from the
//! diagonal all the way out to `t -> 1`:
//!
//! * `t` itself,
//! * `z = atanh t = ln(hi / lo) / 2`,
//! * `l2 = ln(1 - t^2) = ln(lo * hi)`,
//! * `ln hi = ln(1 + t)` and `ln lo = ln(1 - t)`.
//!
//! No power of the original arguments is ever formed. Points can also be
//! built from `z` alone, which reaches ratios `b / a = e^(2z)` far beyond the
//! range where `t` is distinguishable from one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair `(a, b)` written as `(c (1 - t), c (1 + t))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalPoint {
    /// Ratio parameter in `(-1, 1)`; `t = (b - a) / (a + b)`.
    pub t: f64,
    /// The arithmetic mean of the pair, `c = (a + b) / 2`.
    pub scale: f64,
}

impl CanonicalPoint {
    pub fn from_pair(a: f64, b: f64) -> Result<Self> {
        check_positive(a, b)?;
        let scale = a / 2.0 + b / 2.0;
        let t = (b - a) / (a + b);
        Ok(CanonicalPoint { t, scale })
    }

    pub fn new(t: f64, scale: f64) -> Result<Self> {
        if !(t.abs() < 1.0) {
            return Err(Error::Domain(format!("|t| must be < 1, got {t}")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!(
                "scale must be positive, got {scale}"
            )));
        }
        Ok(CanonicalPoint { t, scale })
    }

    pub fn to_pair(self) -> (f64, f64) {
        (self.scale * (1.0 - self.t), self.scale * (1.0 + self.t))
    }
}

pub(crate) fn check_positive(a: f64, b: f64) -> Result<()> {
    if a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "means are defined for positive finite arguments, got ({a}, {b})"
        )))
    }
}

/// Internal canonical coordinates of a point with `t >= 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Canon {
    pub t: f64,
    pub z: f64,
    pub l2: f64,
    pub ln_hi: f64,
    pub ln_lo: f64,
}

impl Canon {
    /// `t` must satisfy `0 <= t < 1`.
    pub fn from_t(t: f64) -> Self {
        let t = t.abs();
        if t < 0.5 {
            Canon {
                t,
                z: t.atanh(),
                l2: (-t * t).ln_1p(),
                ln_hi: t.ln_1p(),
                ln_lo: (-t).ln_1p(),
            }
        } else {
            let ln_hi = t.ln_1p();
            let ln_lo = (1.0 - t).ln();
            Canon {
                t,
                z: 0.5 * (ln_hi - ln_lo),
                l2: ln_hi + ln_lo,
                ln_hi,
                ln_lo,
            }
        }
    }

    /// Canonical coordinates of `(a, b)` and the scale `c = (a + b) / 2`.
    /// Arguments must already be checked positive.
    pub fn from_pair(a: f64, b: f64) -> (Self, f64) {
        let (m, big) = if a <= b { (a, b) } else { (b, a) };
        let c = m / 2.0 + big / 2.0;
        let t = (big - m) / (big + m);
        if t.is_finite() && t < 0.5 {
            return (Canon::from_t(t), c);
        }
        let r = m / big;
        let ln_r = if r > f64::MIN_POSITIVE {
            r.ln()
        } else {
            m.ln() - big.ln()
        };
        let ln_hi = std::f64::consts::LN_2 - r.ln_1p();
        let ln_lo = ln_hi + ln_r;
        let canon = Canon {
            t: (1.0 - r) / (1.0 + r),
            z: -0.5 * ln_r,
            l2: ln_lo + ln_hi,
            ln_hi,
            ln_lo,
        };
        (canon, c)
    }

    /// Coordinates of the point with `atanh t = z`, `z >= 0`. Remains exact
    /// when `tanh z` rounds to one.
    pub fn from_z(z: f64) -> Self {
        let z = z.abs();
        let t = z.tanh();
        let (ln_hi, ln_lo) = if t < 0.5 {
            (t.ln_1p(), (-t).ln_1p())
        } else {
            let ln_hi = std::f64::consts::LN_2 - (-2.0 * z).exp().ln_1p();
            (ln_hi, ln_hi - 2.0 * z)
        };
        Canon {
            t,
            z,
            l2: -2.0 * ln_cosh(z),
            ln_hi,
            ln_lo,
        }
    }

    /// `(1 + t) ln(1 + t) + (1 - t) ln(1 - t)`, which is `2 ln phi_S`.
    pub fn entropy(&self) -> f64 {
        if self.t < 0.5 {
            self.l2 + 2.0 * self.t * self.z
        } else {
            (2.0 - self.ln_lo.exp()) * self.ln_hi + self.ln_lo.exp() * self.ln_lo
        }
    }
}

/// `ln cosh x`, accurate near zero and free of overflow for large `|x|`.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        let h = (0.5 * x).sinh();
        (2.0 * h * h).ln_1p()
    } else {
        x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// `ln(sinh x / x)` for `x >= 0`.
pub(crate) fn ln_sinhc(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-3 {
        let x2 = x * x;
        x2 / 6.0 - x2 * x2 / 180.0 + x2 * x2 * x2 / 2835.0
    } else if x < 20.0 {
        (x.sinh() / x).ln()
    } else {
        x + ln_sinhc_excess(x)
    }
}

/// `ln(sinh x / x) - x` for `x >= 0`; stays accurate when `x` is huge.
pub(crate) fn ln_sinhc_excess(x: f64) -> f64 {
    let x = x.abs();
    if x < 20.0 {
        ln_sinhc(x) - x
    } else {
        -std::f64::consts::LN_2 - x.ln() + (-(-2.0 * x).exp()).ln_1p()
    }
}

/// `z * langevin(q z)` written so that `l2 / 2` plus it keeps full accuracy at
/// large `z`; returns the whole sum `l2 / 2 + z * langevin(q z)`.
pub(crate) fn half_l2_plus_langevin(q: f64, c: &Canon) -> f64 {
    let x = q * c.z;
    if x.abs() <= 1.0 {
        return 0.5 * c.l2 + c.z * langevin(x);
    }
    // z coth(|q| z) - 1/|q| = z + 2z / expm1(2|q|z) - 1/|q|
    let tail = 2.0 * c.z / (2.0 * x.abs()).exp_m1() - 1.0 / q.abs();
    if q > 0.0 {
        c.ln_hi + tail
    } else {
        c.ln_lo - tail
    }
}

/// The Langevin function `coth x - 1/x`.
pub(crate) fn langevin(x: f64) -> f64 {
    if x.abs() < 0.02 {
        let x2 = x * x;
        x * (1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0 - x2 * x2 * x2 / 4725.0)
    } else {
        1.0 / x.tanh() - 1.0 / x
    }
}

/// `ln |e^x - 1|`, stable for large positive `x`.
pub(crate) fn ln_abs_expm1(x: f64) -> f64 {
    if x > 0.0 {
        x + (-(-x).exp_m1()).ln()
    } else {
        (-x.exp_m1()).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_pair() {
        let p = CanonicalPoint::from_pair(2.0, 6.0).unwrap();
        assert_eq!(p.t, 0.5);
        assert_eq!(p.scale, 4.0);
        assert_eq!(p.to_pair(), (2.0, 6.0));
        assert_eq!(CanonicalPoint::from_pair(3.0, 3.0).unwrap().t, 0.0);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(CanonicalPoint::from_pair(0.0, 1.0).is_err());
        assert!(CanonicalPoint::from_pair(-1.0, 1.0).is_err());
        assert!(CanonicalPoint::new(1.0, 1.0).is_err());
        assert!(CanonicalPoint::new(0.2, 0.0).is_err());
    }

    #[test]
    fn canon_routes_agree() {
        for &t in &[1e-9, 1e-3, 0.3, 0.49, 0.51, 0.9, 1.0 - 1e-9] {
            let a = Canon::from_t(t);
            let (b, c) = Canon::from_pair(1.0 - t, 1.0 + t);
            let d = Canon::from_z(t.atanh());
            assert!((c - 1.0).abs() < 1e-15);
            assert!((a.z - b.z).abs() <= 1e-14 * a.z.max(1.0), "t={t}");
            // (1 - t, 1 + t) are rounded, which moves t by about one ulp.
            assert!((a.l2 - b.l2).abs() <= 1e-14 * a.l2.abs() + 1e-15 * t);
            assert!((a.z - d.z).abs() <= 1e-12 * a.z, "t={t}");
        }
    }

    #[test]
    fn extreme_ratio_does_not_underflow() {
        let (c, scale) = Canon::from_pair(1e-300, 1e300);
        assert!(c.z.is_finite() && c.l2.is_finite());
        assert!((c.z - 300.0 * 10f64.ln()).abs() < 1e-9 * c.z);
        assert!(scale.is_finite());
    }

    #[test]
    fn helpers_match_naive_forms() {
        for &x in &[1e-4f64, 0.01, 0.3, 2.0, 15.0] {
            let x2 = x * x;
            let reference = if x < 0.05 {
                x2 / 2.0 - x2 * x2 / 12.0 + x2 * x2 * x2 / 45.0 - 17.0 * x2 * x2 * x2 * x2 / 2520.0
            } else {
                x.cosh().ln()
            };
            assert!((ln_cosh(x) - reference).abs() < 1e-14 * reference);
            assert!((ln_sinhc(x) - (x.sinh() / x).ln()).abs() < 1e-15 + 1e-13 * x * x);
            if x >= 0.01 {
                assert!((langevin(x) - (1.0 / x.tanh() - 1.0 / x)).abs() < 1e-10 * x);
            }
        }
        assert!((langevin(1e-4) - (1e-4 / 3.0 - 1e-12 / 45.0)).abs() < 1e-20);
        assert!((ln_cosh(800.0) - (800.0 - std::f64::consts::LN_2)).abs() < 1e-12);
        assert!((ln_abs_expm1(2.0) - (2f64.exp() - 1.0).ln()).abs() < 1e-15);
        assert!((ln_abs_expm1(-0.5) - (1.0 - (-0.5f64).exp()).ln()).abs() < 1e-15);
        assert!((ln_abs_expm1(1000.0) - 1000.0).abs() < 1e-12);
    }
}

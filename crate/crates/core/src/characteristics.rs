//! Characteristic number, characteristic-function series and second-order
//! comparison exponents.
//!
//! The characteristic number is `sigma(M) = lim_{t -> 1} phi_M(t)`, the value
//! of `M(0+, 2)`. For every mean in this crate `0 <= sigma <= 2`, and
//! `M <= N` forces `sigma(M) <= sigma(N)`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mean::{Elementary, Mean, MeanKind, BRANCH_EPS};

/// How a [`SigmaResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMethod {
    DirectLimit,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaResult {
    /// Best estimate, clamped to `[0, 2]`.
    pub value: f64,
    pub converged: bool,
    /// `(epsilon, phi(1 - epsilon))` samples.
    pub tail: Vec<(f64, f64)>,
    /// Aitken-accelerated estimates built from consecutive triples of `tail`.
    pub accelerated: Vec<f64>,
    pub method: SigmaMethod,
}

/// Settings for [`sigma_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaOptions {
    /// Exponents `k` of the samples `epsilon = 10^-k`.
    pub k_min: u32,
    pub k_max: u32,
    /// Absolute agreement required between the last two accelerated estimates.
    pub tol: f64,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions {
            k_min: 2,
            k_max: 10,
            tol: 1e-9,
        }
    }
}

/// Estimates `sigma(m)` from `phi(1 - 10^-k)`, `k = 2..=10`.
///
/// Logarithmically slow tails (such as `L`) come back with
/// `converged == false` and the best available extrapolate.
///
/// ```
/// use meanlab::{characteristics::sigma, Elementary, Mean};
///
/// let r = sigma(&Mean::elementary(Elementary::I)).unwrap();
/// assert!(r.converged);
/// assert!((r.value - 2.0 / std::f64::consts::E).abs() < 1e-6);
/// ```
pub fn sigma(m: &Mean) -> Result<SigmaResult> {
    sigma_with(m, SigmaOptions::default())
}

pub fn sigma_with(m: &Mean, opts: SigmaOptions) -> Result<SigmaResult> {
    if opts.k_max < opts.k_min + 2 {
        return Err(Error::Invalid("sigma needs at least three samples".into()));
    }
    let mut tail = Vec::new();
    for k in opts.k_min..=opts.k_max {
        let eps = 10f64.powi(-(k as i32));
        // atanh(1 - eps) without forming 1 - eps.
        let z = 0.5 * ((2.0 - eps) / eps).ln();
        let v = m.ln_phi_at_z(z)?.exp();
        if !v.is_finite() {
            return Err(Error::EvaluationAt {
                t: 1.0 - eps,
                source: Box::new(Error::Domain(format!(
                    "non-finite phi at epsilon = {eps:e}"
                ))),
            });
        }
        tail.push((eps, v));
    }
    let accelerated: Vec<f64> = tail
        .windows(3)
        .map(|w| aitken(w[0].1, w[1].1, w[2].1))
        .collect();
    let n = accelerated.len();
    let (mut last, prev) = (accelerated[n - 1], accelerated[n - 2]);
    let mut converged = (last - prev).abs() < opts.tol;
    // Square-root tails leave a geometric remainder after one pass; a second
    // pass removes it, but only once the first has nearly settled.
    if !converged && n >= 4 && (last - prev).abs() < 1e3 * opts.tol {
        let second: Vec<f64> = accelerated
            .windows(3)
            .map(|w| aitken(w[0], w[1], w[2]))
            .collect();
        let k = second.len();
        if (second[k - 1] - second[k - 2]).abs() < opts.tol {
            last = second[k - 1];
            converged = true;
        }
    }
    Ok(SigmaResult {
        value: last.clamp(0.0, 2.0),
        converged,
        tail,
        accelerated,
        method: SigmaMethod::DirectLimit,
    })
}

fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let den = d2 - d1;
    // A flat or numerically exhausted sequence has nothing left to accelerate.
    if den == 0.0 || den.abs() <= 1e-14 * (d1.abs() + d2.abs()) {
        return x2;
    }
    let a = x2 - d2 * d2 / den;
    if a.is_finite() {
        a
    } else {
        x2
    }
}

/// `sigma(m)` from a registered closed form, falling back to [`sigma`].
pub fn sigma_preferring_closed(m: &Mean) -> Result<SigmaResult> {
    match sigma_closed(m) {
        Ok(value) => Ok(SigmaResult {
            value,
            converged: true,
            tail: Vec::new(),
            accelerated: Vec::new(),
            method: SigmaMethod::ClosedForm,
        }),
        Err(Error::Unsupported(_)) => sigma(m),
        Err(e) => Err(e),
    }
}

/// Exact characteristic number where a closed form is known.
///
/// Registered: the elementary means, Hölder means, Lehmer means,
/// generalized logarithmic means, the Stolarsky diagonal `I_{s,s}`, `K_r` for
/// `r >= -1`, power transforms `M_s` with `s > 0` of a registered `M`, and
/// duals of means with positive `sigma`. Anything else is
/// [`Error::Unsupported`].
///
/// ```
/// use meanlab::{characteristics::sigma_closed, stolarsky};
///
/// let s = sigma_closed(&stolarsky(3.0, 3.0).unwrap()).unwrap();
/// assert!((s - 2.0 * (-1.0f64 / 3.0).exp()).abs() < 1e-15);
/// ```
pub fn sigma_closed(m: &Mean) -> Result<f64> {
    use std::f64::consts::{E, PI};
    let unsupported = || Err(Error::Unsupported(format!("sigma({m})")));
    let v = match m.kind() {
        MeanKind::Elementary(e) => match e {
            Elementary::H | Elementary::G | Elementary::L => 0.0,
            Elementary::I => 2.0 / E,
            Elementary::A => 1.0,
            Elementary::S => 2.0,
            Elementary::P => 2.0 / PI,
            Elementary::T => 4.0 / PI,
        },
        MeanKind::Holder(s) => {
            if *s >= BRANCH_EPS {
                2f64.powf(1.0 - 1.0 / s)
            } else {
                0.0
            }
        }
        MeanKind::Lehmer(r) => {
            if r.abs() < BRANCH_EPS {
                1.0
            } else if *r > 0.0 {
                2.0
            } else {
                0.0
            }
        }
        MeanKind::GenLog(_) => 0.0,
        MeanKind::Stolarsky(r, s) if (s - r).abs() < BRANCH_EPS => {
            let q = 0.5 * (r + s);
            if q >= BRANCH_EPS {
                2.0 * (-1.0 / q).exp()
            } else {
                0.0
            }
        }
        MeanKind::Stolarsky(r, _) if r.abs() < BRANCH_EPS => 0.0,
        MeanKind::K(r) => {
            if (r + 1.0).abs() < BRANCH_EPS {
                1.0
            } else if *r > -1.0 {
                2.0
            } else {
                return unsupported();
            }
        }
        MeanKind::Power(base, s) => {
            if s.abs() < BRANCH_EPS {
                0.0
            } else if *s > 0.0 {
                let inner = sigma_closed(base)?;
                2f64.powf(1.0 - 1.0 / s) * inner.powf(1.0 / s)
            } else {
                return unsupported();
            }
        }
        MeanKind::Dual(base) if sigma_closed(base)? > 0.0 => 0.0,
        _ => return unsupported(),
    };
    Ok(v)
}

/// Least-squares fit of the even expansion `phi(t) = sum a_k t^(2k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiSeries {
    /// `a_0, a_1, ..., a_order`, with `a_0 = 1` exactly.
    pub coefficients: Vec<f64>,
    /// Largest absolute misfit over the samples.
    pub fit_residual: f64,
    pub fit_window: (f64, f64),
    /// Set when `fit_residual` exceeds `1e-8`.
    pub flagged: bool,
}

impl PhiSeries {
    pub fn eval(&self, t: f64) -> f64 {
        let t2 = t * t;
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * t2 + a)
    }
}

const FIT_HALF_WIDTH: f64 = 0.1;

/// Fits `phi_m` on `|t| <= 0.1` by an even polynomial of degree `2 * order`
/// with the constant term pinned to one.
///
/// The truncated tail biases low orders: with `order = 1` the `t^4` term
/// moves `a_1` by roughly `1e-4`, so use `order >= 3` for six digits.
pub fn phi_series(m: &Mean, order: usize) -> Result<PhiSeries> {
    if order == 0 {
        return Err(Error::Invalid("phi_series needs order >= 1".into()));
    }
    let n = (8 * order).max(16);
    // Symmetric Chebyshev-like nodes; phi is even so only t^2 matters.
    let ts: Vec<f64> = (0..n)
        .map(|j| {
            FIT_HALF_WIDTH * ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos()
        })
        .collect();
    let mut x = DMatrix::<f64>::zeros(n, order);
    let mut y = DVector::<f64>::zeros(n);
    for (j, &t) in ts.iter().enumerate() {
        let u = (t / FIT_HALF_WIDTH).powi(2);
        let mut p = 1.0;
        for k in 0..order {
            p *= u;
            x[(j, k)] = p;
        }
        y[j] = m.ln_phi(t)?.exp_m1();
    }
    let b = x
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let residual = (&x * &b - &y).amax();
    let mut coefficients = vec![1.0];
    let mut scale = 1.0;
    for k in 0..order {
        scale *= FIT_HALF_WIDTH * FIT_HALF_WIDTH;
        coefficients.push(b[k] / scale);
    }
    Ok(PhiSeries {
        coefficients,
        fit_residual: residual,
        fit_window: (-FIT_HALF_WIDTH, FIT_HALF_WIDTH),
        flagged: residual > 1e-8,
    })
}

/// `lim_{t -> 0} ln(m / n)(1 - t, 1 + t) / t^2` with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonExponent {
    pub value: f64,
    pub converged: bool,
    /// Diagonal of the Richardson table, coarsest first.
    pub estimates: Vec<f64>,
}

/// Second-order comparison exponent of `m` against `n`.
///
/// A positive value means `m > n` on a punctured neighbourhood of the
/// diagonal, a negative one `m < n`.
pub fn comparison_exponent(m: &Mean, n: &Mean) -> Result<ComparisonExponent> {
    const LEVELS: usize = 7;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        let t = 0.1 * 0.5f64.powi(k as i32);
        let f = (m.ln_phi(t).map_err(|e| e.at(t))? - n.ln_phi(t).map_err(|e| e.at(t))?) / (t * t);
        let mut row = vec![f];
        for j in 1..=k {
            let w = 4f64.powi(j as i32);
            let prev = &table[k - 1];
            row.push(row[j - 1] + (row[j - 1] - prev[j - 1]) / (w - 1.0));
        }
        table.push(row);
    }
    let estimates: Vec<f64> = table.iter().enumerate().map(|(k, r)| r[k]).collect();
    let value = estimates[LEVELS - 1];
    let converged = (value - estimates[LEVELS - 2]).abs() <= 1e-7 * (1.0 + value.abs());
    Ok(ComparisonExponent {
        value,
        converged,
        estimates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_log, holder, k_mean, stolarsky};

    fn el(e: Elementary) -> Mean {
        Mean::elementary(e)
    }

    #[test]
    fn sigma_of_fast_tails() {
        use Elementary::*;
        for e in [H, G, I, A, S, P, T] {
            let r = sigma(&el(e)).unwrap();
            let want = sigma_closed(&el(e)).unwrap();
            assert!(r.converged, "{e:?}");
            assert!(
                (r.value - want).abs() < 1e-6,
                "{e:?}: {} vs {want}",
                r.value
            );
        }
    }

    #[test]
    fn logarithmic_tail_is_flagged() {
        let r = sigma(&el(Elementary::L)).unwrap();
        assert!(!r.converged);
        assert!(r.value < 0.05);
        assert_eq!(r.tail.len(), 9);
        assert_eq!(r.method, SigmaMethod::DirectLimit);
    }

    #[test]
    fn closed_forms() {
        let a2 = el(Elementary::A).power(2.0).unwrap();
        assert!((sigma_closed(&a2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sigma_closed(&k_mean(1.0).unwrap()).unwrap(), 2.0);
        assert_eq!(sigma_closed(&k_mean(-1.0).unwrap()).unwrap(), 1.0);
        assert!(matches!(
            sigma_closed(&k_mean(-2.0).unwrap()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            sigma_closed(&crate::families::lambda_mean(3.0).unwrap()),
            Err(Error::Unsupported(_))
        ));
        let r = sigma_preferring_closed(&holder(3.0).unwrap()).unwrap();
        assert_eq!(r.method, SigmaMethod::ClosedForm);
    }

    #[test]
    fn closed_and_direct_agree_where_both_apply() {
        let cases = [
            holder(0.5).unwrap(),
            holder(2.0).unwrap(),
            stolarsky(1.5, 1.5).unwrap(),
            stolarsky(3.0, 3.0).unwrap(),
            k_mean(0.5).unwrap(),
            el(Elementary::S).power(2.0).unwrap(),
            el(Elementary::I).power(0.5).unwrap(),
        ];
        for m in cases {
            let d = sigma(&m).unwrap();
            let c = sigma_closed(&m).unwrap();
            if d.converged {
                assert!((d.value - c).abs() <= 1e-6, "{m}: {} vs {c}", d.value);
            }
        }
    }

    #[test]
    fn series_fit() {
        let h = phi_series(&el(Elementary::H), 2).unwrap();
        assert!((h.coefficients[1] + 1.0).abs() < 1e-10);
        assert!(h.coefficients[2].abs() < 1e-8);
        assert!(!h.flagged);
        let g = phi_series(&el(Elementary::G), 4).unwrap();
        assert!((g.coefficients[2] + 0.125).abs() < 1e-6);
        assert!((g.eval(0.05) - g_phi(0.05)).abs() < 1e-12);
        assert!(phi_series(&el(Elementary::G), 0).is_err());
    }

    fn g_phi(t: f64) -> f64 {
        (1.0 - t * t).sqrt()
    }

    #[test]
    fn exponents() {
        let a = el(Elementary::A);
        let l = gen_log(1.0).unwrap();
        let e = comparison_exponent(&l, &a).unwrap();
        assert!(e.converged);
        assert!((e.value + 1.0 / 3.0).abs() < 1e-9);
        let z = comparison_exponent(&holder(2.0).unwrap(), &el(Elementary::S)).unwrap();
        assert!(z.value.abs() < 1e-9);
        assert_eq!(comparison_exponent(&a, &a).unwrap().value, 0.0);
    }
}

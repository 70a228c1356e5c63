//! Checks of the mean axioms on a grid.

use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;
use crate::mean::BivariateMean;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanAxiomReport {
    pub tol: f64,
    /// Largest `|M(a,b) - M(b,a)| / M(a,b)`.
    pub symmetry_max_violation: f64,
    pub symmetry_violations: Vec<(f64, f64, f64)>,
    /// Largest `|M(ca, cb) - c M(a, b)| / (c M(a, b))`.
    pub homogeneity_max_violation: f64,
    pub homogeneity_violations: Vec<(f64, f64, f64)>,
    /// `(a, b, value)` with value outside `[min, max]` by more than `tol`.
    pub betweenness_violations: Vec<(f64, f64, f64)>,
    pub reflexivity_ok: bool,
    /// Points where evaluation returned an error, with its message.
    pub evaluation_failures: Vec<(f64, f64, String)>,
}

impl MeanAxiomReport {
    pub fn is_clean(&self) -> bool {
        self.symmetry_violations.is_empty()
            && self.homogeneity_violations.is_empty()
            && self.betweenness_violations.is_empty()
            && self.evaluation_failures.is_empty()
            && self.reflexivity_ok
    }
}

/// Probes symmetry, homogeneity (at the grid's scale factors), betweenness
/// and reflexivity. A failing mean yields a populated report, not an error.
///
/// ```
/// use meanlab::{validate_mean, Elementary, GridSpec, Mean};
///
/// let r = validate_mean(&Mean::elementary(Elementary::G), &GridSpec::default(), 1e-12);
/// assert!(r.is_clean());
/// ```
pub fn validate_mean<M: BivariateMean + ?Sized>(
    m: &M,
    grid: &GridSpec,
    tol: f64,
) -> MeanAxiomReport {
    let mut r = MeanAxiomReport {
        tol,
        symmetry_max_violation: 0.0,
        symmetry_violations: Vec::new(),
        homogeneity_max_violation: 0.0,
        homogeneity_violations: Vec::new(),
        betweenness_violations: Vec::new(),
        reflexivity_ok: true,
        evaluation_failures: Vec::new(),
    };
    for &t in grid.t_values() {
        let base = match m.value(1.0 - t, 1.0 + t) {
            Ok(v) => v,
            Err(e) => {
                r.evaluation_failures
                    .push((1.0 - t, 1.0 + t, e.to_string()));
                continue;
            }
        };
        for &c in &grid.scale_factors {
            let (a, b) = (c * (1.0 - t), c * (1.0 + t));
            let (v, w) = match (m.value(a, b), m.value(b, a)) {
                (Ok(v), Ok(w)) => (v, w),
                (Err(e), _) | (_, Err(e)) => {
                    r.evaluation_failures.push((a, b, e.to_string()));
                    continue;
                }
            };
            let sym = (v - w).abs() / v.abs().max(w.abs());
            r.symmetry_max_violation = r.symmetry_max_violation.max(sym);
            if sym > tol {
                r.symmetry_violations.push((a, b, sym));
            }
            let hom = (v - c * base).abs() / (c * base).abs();
            r.homogeneity_max_violation = r.homogeneity_max_violation.max(hom);
            if hom > tol {
                r.homogeneity_violations.push((a, b, hom));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if !(v >= lo * (1.0 - tol) && v <= hi * (1.0 + tol)) {
                r.betweenness_violations.push((a, b, v));
            }
        }
    }
    for x in [1e-3, 0.5, 1.0, 7.25, 1e3] {
        if m.value(x, x).ok() != Some(x) {
            r.reflexivity_ok = false;
        }
    }
    r
}

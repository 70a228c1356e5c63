use serde::{Deserialize, Serialize};

use super::compare::{compare, OrderingReport, Side, Verdict};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::grid::GridSpec;
use crate::mean::Mean;

/// Which extremal parameter is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    /// Largest `p` with `instance(p) <= target`.
    SupLe,
    /// Smallest `p` with `instance(p) >= target`.
    InfGe,
}

impl BoundDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundDirection::SupLe => "sup_le",
            BoundDirection::InfGe => "inf_ge",
        }
    }

    fn holds(self, r: &OrderingReport) -> bool {
        match self {
            BoundDirection::SupLe => r.is_le(),
            BoundDirection::InfGe => r.is_ge(),
        }
    }

    /// Side of a witness that breaks the inequality.
    fn breaking_side(self) -> Side {
        match self {
            BoundDirection::SupLe => Side::Above,
            BoundDirection::InfGe => Side::Below,
        }
    }
}

impl std::str::FromStr for BoundDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup_le" | "sup-le" => Ok(BoundDirection::SupLe),
            "inf_ge" | "inf-ge" => Ok(BoundDirection::InfGe),
            _ => Err(Error::Invalid(format!(
                "direction must be sup_le or inf_ge, got '{s}'"
            ))),
        }
    }
}

/// One bisection step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BisectionStep {
    pub iter: usize,
    pub lo: f64,
    pub hi: f64,
    pub trial: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestConstantResult {
    pub family: String,
    pub target: String,
    pub direction: BoundDirection,
    /// Midpoint of the final bracket.
    pub parameter: f64,
    /// Final bracket `(low, high)` with `high - low <= tol`.
    pub bracket: (f64, f64),
    /// End of the bracket at which the inequality holds on the grid.
    pub satisfied: f64,
    /// End at which it fails.
    pub violated: f64,
    pub iterations: usize,
    /// Strongest witness `t` against the inequality at the violated end.
    pub violating_t: Option<f64>,
    pub trace: Vec<BisectionStep>,
}

/// Recovers a best-possible constant by bisection on the family parameter.
///
/// Every trial compares the whole grid against `target`, so the grid must
/// reach both the diagonal (where second-order violations appear) and the
/// extreme ratios (where characteristic-number violations appear).
///
/// ```
/// use meanlab::lab::{best_constant, BoundDirection};
/// use meanlab::{Elementary, Family, GridSpec, Mean};
///
/// let r = best_constant(
///     &Family::gen_log(),
///     &Mean::elementary(Elementary::A),
///     BoundDirection::SupLe,
///     (1.0, 6.0),
///     1e-4,
///     &GridSpec::default(),
///     1e-11,
/// )
/// .unwrap();
/// assert!((r.parameter - 3.0).abs() < 1e-4);
/// ```
pub fn best_constant(
    family: &Family,
    target: &Mean,
    direction: BoundDirection,
    bracket: (f64, f64),
    tol: f64,
    grid: &GridSpec,
    cmp_tol: f64,
) -> Result<BestConstantResult> {
    if !family.ordered() || family.is_finite() {
        return Err(Error::Invalid(format!(
            "{family} is not a one-parameter ordered family"
        )));
    }
    if !grid.includes_near_diagonal() || !grid.includes_extreme() {
        return Err(Error::Invalid(
            "best-constant search needs a grid reaching t <= 1e-4 and t >= 1 - 1e-6".into(),
        ));
    }
    let (lo, hi) = bracket;
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Invalid(format!(
            "need lo < hi and tol > 0, got ({lo}, {hi}) and {tol}"
        )));
    }
    let run =
        |p: f64| -> Result<OrderingReport> { compare(&family.instance(p)?, target, grid, cmp_tol) };
    let lo_report = run(lo)?;
    let hi_report = run(hi)?;
    let (lo_ok, hi_ok) = (direction.holds(&lo_report), direction.holds(&hi_report));
    let straddles = match direction {
        BoundDirection::SupLe => lo_ok && !hi_ok,
        BoundDirection::InfGe => !lo_ok && hi_ok,
    };
    if !straddles {
        return Err(Error::Bracketing {
            lo,
            hi,
            verdict: format!(
                "lo {}, hi {}",
                lo_report.verdict.as_str(),
                hi_report.verdict.as_str()
            ),
        });
    }
    let (mut sat, mut vio) = if lo_ok { (lo, hi) } else { (hi, lo) };
    let mut vio_report = if lo_ok { hi_report } else { lo_report };
    let mut trace = Vec::new();
    let mut iter = 0;
    while (vio - sat).abs() > tol {
        iter += 1;
        let trial = 0.5 * (sat + vio);
        let r = run(trial)?;
        trace.push(BisectionStep {
            iter,
            lo: sat.min(vio),
            hi: sat.max(vio),
            trial,
            verdict: r.verdict,
        });
        if direction.holds(&r) {
            sat = trial;
        } else {
            vio = trial;
            vio_report = r;
        }
    }
    Ok(BestConstantResult {
        family: family.to_string(),
        target: target.to_string(),
        direction,
        parameter: 0.5 * (sat + vio),
        bracket: (sat.min(vio), sat.max(vio)),
        satisfied: sat,
        violated: vio,
        iterations: iter,
        violating_t: vio_report.strongest(direction.breaking_side()).map(|w| w.t),
        trace,
    })
}

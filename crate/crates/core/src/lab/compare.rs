use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::mean::BivariateMean;

/// Default relative tolerance below which two values count as equal.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Pointwise relation between two means on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `m <= n` at every point.
    #[serde(rename = "LE")]
    Le,
    /// `m >= n` at every point.
    #[serde(rename = "GE")]
    Ge,
    /// Each side is strictly larger somewhere.
    #[serde(rename = "CROSSING")]
    Crossing,
    /// Equal within tolerance everywhere.
    #[serde(rename = "EQUAL")]
    Equal,
}

impl Verdict {
    /// The verdict with the two means swapped.
    pub fn flip(self) -> Verdict {
        match self {
            Verdict::Le => Verdict::Ge,
            Verdict::Ge => Verdict::Le,
            v => v,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Le => "LE",
            Verdict::Ge => "GE",
            Verdict::Crossing => "CROSSING",
            Verdict::Equal => "EQUAL",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which side is larger at a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `m > n`.
    Above,
    /// `m < n`.
    Below,
}

/// One evaluation of both means at `(a, b) = (1 - t, 1 + t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

impl Sample {
    /// `(lhs - rhs) / max(lhs, rhs)`.
    pub fn rel_diff(&self) -> f64 {
        self.diff / self.lhs.max(self.rhs)
    }
}

/// A point where one mean strictly exceeds the other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingReport {
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    /// `LE` or `GE` with ties confined to a prefix of the grid, i.e. to the
    /// near-diagonal points where the gap is below the tolerance.
    pub strict: bool,
    pub tol: f64,
    /// Largest relative excess against the verdict; for `CROSSING` the
    /// smaller of the two one-sided maxima.
    pub max_violation: f64,
    /// Largest relative excess of `lhs` over `rhs` (zero if none).
    pub max_above: f64,
    /// Largest relative excess of `rhs` over `lhs` (zero if none).
    pub max_below: f64,
    /// Largest `t` at which the two values tie.
    pub tied_up_to: Option<f64>,
    /// Points contradicting the verdict's direction; both sides for
    /// `CROSSING`, none otherwise.
    pub witnesses: Vec<Witness>,
    pub samples: Vec<Sample>,
}

impl OrderingReport {
    /// Points where `lhs` exceeds `rhs` by more than the tolerance.
    pub fn above(&self) -> impl Iterator<Item = &Sample> {
        self.samples.iter().filter(move |s| s.rel_diff() > self.tol)
    }

    /// Points where `rhs` exceeds `lhs` by more than the tolerance.
    pub fn below(&self) -> impl Iterator<Item = &Sample> {
        self.samples
            .iter()
            .filter(move |s| -s.rel_diff() > self.tol)
    }

    /// The strongest witness on the given side, ties broken by smallest `t`.
    pub fn strongest(&self, side: Side) -> Option<Witness> {
        let sign = match side {
            Side::Above => 1.0,
            Side::Below => -1.0,
        };
        let mut best: Option<&Sample> = None;
        for s in &self.samples {
            let x = sign * s.rel_diff();
            if x > self.tol && best.is_none_or(|b| x > sign * b.rel_diff()) {
                best = Some(s);
            }
        }
        best.map(|s| witness(s, side))
    }

    /// `lhs <= rhs` holds, ties allowed.
    pub fn is_le(&self) -> bool {
        matches!(self.verdict, Verdict::Le | Verdict::Equal)
    }

    /// `lhs >= rhs` holds, ties allowed.
    pub fn is_ge(&self) -> bool {
        matches!(self.verdict, Verdict::Ge | Verdict::Equal)
    }
}

fn witness(s: &Sample, side: Side) -> Witness {
    Witness {
        t: s.t,
        a: s.a,
        b: s.b,
        lhs: s.lhs,
        rhs: s.rhs,
        side,
    }
}

/// Compares `m` and `n` at every grid point.
///
/// ```
/// use meanlab::{lab::{compare, Verdict}, Elementary, GridSpec, Mean};
///
/// let g = Mean::elementary(Elementary::G);
/// let a = Mean::elementary(Elementary::A);
/// let r = compare(&g, &a, &GridSpec::default(), 1e-11).unwrap();
/// assert_eq!(r.verdict, Verdict::Le);
/// assert!(r.strict);
/// ```
pub fn compare<M, N>(m: &M, n: &N, grid: &GridSpec, tol: f64) -> Result<OrderingReport>
where
    M: BivariateMean + ?Sized,
    N: BivariateMean + ?Sized,
{
    if grid.is_empty() {
        return Err(Error::Invalid("empty grid".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::Invalid(format!("tolerance must be >= 0, got {tol}")));
    }
    let mut samples = Vec::with_capacity(grid.len());
    for &t in grid.t_values() {
        let lhs = m.phi(t).map_err(|e| e.at(t))?;
        let rhs = n.phi(t).map_err(|e| e.at(t))?;
        if !(lhs.is_finite() && rhs.is_finite()) {
            return Err(Error::Domain("non-finite mean value".into()).at(t));
        }
        samples.push(Sample {
            t,
            a: 1.0 - t,
            b: 1.0 + t,
            lhs,
            rhs,
            diff: lhs - rhs,
        });
    }
    Ok(classify(m.label(), n.label(), samples, tol))
}

pub(crate) fn classify(lhs: String, rhs: String, samples: Vec<Sample>, tol: f64) -> OrderingReport {
    let mut max_above: f64 = 0.0;
    let mut max_below: f64 = 0.0;
    let mut tied_up_to: Option<f64> = None;
    let mut first_untied: Option<f64> = None;
    let mut ties_after_untied = false;
    for s in &samples {
        let r = s.rel_diff();
        max_above = max_above.max(r);
        max_below = max_below.max(-r);
        if r.abs() <= tol {
            tied_up_to = Some(tied_up_to.map_or(s.t, |x: f64| x.max(s.t)));
            if first_untied.is_some_and(|u| u < s.t) {
                ties_after_untied = true;
            }
        } else {
            first_untied = Some(first_untied.map_or(s.t, |u: f64| u.min(s.t)));
        }
    }
    let above = max_above > tol;
    let below = max_below > tol;
    let verdict = match (above, below) {
        (false, false) => Verdict::Equal,
        (false, true) => Verdict::Le,
        (true, false) => Verdict::Ge,
        (true, true) => Verdict::Crossing,
    };
    let max_violation = match verdict {
        Verdict::Le => max_above,
        Verdict::Ge => max_below,
        Verdict::Equal => max_above.max(max_below),
        Verdict::Crossing => max_above.min(max_below),
    };
    let strict = matches!(verdict, Verdict::Le | Verdict::Ge) && !ties_after_untied;
    let witnesses = if verdict == Verdict::Crossing {
        samples
            .iter()
            .filter(|s| s.rel_diff().abs() > tol)
            .map(|s| {
                let side = if s.diff > 0.0 {
                    Side::Above
                } else {
                    Side::Below
                };
                witness(s, side)
            })
            .collect()
    } else {
        Vec::new()
    };
    OrderingReport {
        lhs,
        rhs,
        verdict,
        strict,
        tol,
        max_violation,
        max_above,
        max_below,
        tied_up_to,
        witnesses,
        samples,
    }
}

/// Compares each adjacent pair of `means`; the chain holds when every
/// report is `LE`.
pub fn verify_chain<M: BivariateMean>(
    means: &[M],
    grid: &GridSpec,
    tol: f64,
) -> Result<Vec<OrderingReport>> {
    if means.len() < 2 {
        return Err(Error::Invalid("a chain needs at least two means".into()));
    }
    means
        .windows(2)
        .map(|w| compare(&w[0], &w[1], grid, tol))
        .collect()
}

/// Whether every link of a chain is `LE`.
pub fn chain_holds(links: &[OrderingReport]) -> bool {
    links.iter().all(|r| r.verdict == Verdict::Le)
}

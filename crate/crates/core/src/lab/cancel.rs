//! Cancelling means of an ordered family.
//!
//! A mean `C` is right cancelling for a family when it dominates some member
//! while no member dominates it; left cancelling is the mirror statement.
//! The family is infinite and the grid finite, so every verdict here is
//! numerical evidence over a sampled ladder, never a proof.
//!
//! The left side is reduced to the right side through duality: `N <= C`
//! iff `dual(C) <= dual(N)`. For the duality-closed families this keeps all
//! far-field comparisons between quantities of moderate size.

use serde::{Deserialize, Serialize};

use super::compare::{compare, Side, Verdict, DEFAULT_TOL};
use crate::characteristics::sigma_preferring_closed;
use crate::error::{Error, Result};
use crate::families::{Family, FamilyKind};
use crate::grid::GridSpec;
use crate::mean::Mean;

/// Margin by which characteristic numbers must separate.
pub const SIGMA_MARGIN: f64 = 1e-3;

pub const EVIDENCE_NOTE: &str =
    "numerical evidence on a sampled parameter ladder and grid; not a proof";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CancelSide {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CancelVerdict {
    #[serde(rename = "SUPPORTED")]
    Supported,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl CancelVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CancelVerdict::Supported => "SUPPORTED",
            CancelVerdict::Refuted => "REFUTED",
            CancelVerdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for CancelVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a refutation witness was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    Grid,
    /// Beyond the grid, at a ratio addressed through `z = atanh t`.
    Far,
}

/// A point that rules out "member beyond the candidate".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefutationWitness {
    /// `t` of the point; rounds to one for far witnesses.
    pub t: f64,
    /// `ln(b / a)` of the point.
    pub ln_ratio: f64,
    /// `ln(member / candidate)` there.
    pub ln_gap: f64,
    pub source: WitnessSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberOutcome {
    /// Member coincides with the candidate; not counted either way.
    Equal,
    /// The member is shown not to lie beyond the candidate.
    Refuted,
    /// The member lies beyond the candidate on every probe.
    Dominates,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberCheck {
    pub param: f64,
    pub mean: String,
    /// Grid relation of the member to the candidate.
    pub verdict: Verdict,
    /// The member lies on the candidate's inner side (below it for right
    /// cancelling, above it for left).
    pub bounded_by_candidate: bool,
    pub outcome: MemberOutcome,
    pub witness: Option<RefutationWitness>,
    /// Characteristic numbers in the frame used for the test (duals on the
    /// left side).
    pub sigma_member: Option<f64>,
    pub sigma_candidate: Option<f64>,
    pub sigma_backed: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CancellationVerdict {
    pub candidate: String,
    pub family: String,
    pub side: CancelSide,
    pub ladder: Vec<f64>,
    pub dominates_some_member: bool,
    /// Parameter of a member the candidate bounds.
    pub dominance_witness: Option<f64>,
    pub dominated_by_none: bool,
    pub sigma_argument_used: bool,
    pub members: Vec<MemberCheck>,
    pub verdict: CancelVerdict,
    pub note: String,
}

/// Ladder `{0.5, 1, 2, 3, 5, 10, 20, 50}` plus values at which the family is
/// known to change behaviour.
pub fn default_ladder(family: &Family) -> Vec<f64> {
    let mut v = vec![0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0];
    match family.kind() {
        FamilyKind::Holder => v.extend([2.0 / 3.0, 5.0 / 3.0]),
        FamilyKind::Lehmer => v.push(1.0 / 3.0),
        FamilyKind::Lambda => v.push(4.0),
        _ => {}
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Right-cancelling verdict for `candidate` against `family`.
///
/// ```
/// use meanlab::lab::{cancelling_verdict, default_ladder, CancelVerdict};
/// use meanlab::{Elementary, Family, GridSpec, Mean};
///
/// let f = Family::stolarsky_diagonal();
/// let s = Mean::elementary(Elementary::S);
/// let v = cancelling_verdict(&f, &s, &default_ladder(&f), &GridSpec::default()).unwrap();
/// assert_eq!(v.verdict, CancelVerdict::Supported);
/// assert!(v.sigma_argument_used);
/// ```
pub fn cancelling_verdict(
    family: &Family,
    candidate: &Mean,
    ladder: &[f64],
    grid: &GridSpec,
) -> Result<CancellationVerdict> {
    verdict(family, candidate, ladder, grid, CancelSide::Right)
}

/// Left-cancelling verdict. Parametric families are probed at
/// `instance(-p)` for `p` in the ladder; finite families use every member.
pub fn left_cancelling_verdict(
    family: &Family,
    candidate: &Mean,
    ladder: &[f64],
    grid: &GridSpec,
) -> Result<CancellationVerdict> {
    verdict(family, candidate, ladder, grid, CancelSide::Left)
}

fn members(family: &Family, ladder: &[f64], side: CancelSide) -> Result<Vec<(f64, Mean)>> {
    if let Some(ps) = family.finite_params() {
        return ps
            .into_iter()
            .map(|p| Ok((p, family.instance(p)?)))
            .collect();
    }
    if ladder.is_empty() {
        return Err(Error::Invalid("parameter ladder is empty".into()));
    }
    if ladder.iter().fold(0.0f64, |m, p| m.max(p.abs())) < 10.0 {
        return Err(Error::Invalid(
            "parameter ladder must reach |p| >= 10 to probe the asymptotic regime".into(),
        ));
    }
    let sign = match side {
        CancelSide::Right => 1.0,
        CancelSide::Left => -1.0,
    };
    ladder
        .iter()
        .map(|&p| Ok((sign * p, family.instance(sign * p)?)))
        .collect()
}

/// `z` values `10^(k/2)`, `k = 2..=30`, used past the end of the grid.
fn far_probes() -> impl Iterator<Item = f64> {
    (2..=30).map(|k| 10f64.powf(k as f64 / 2.0))
}

fn verdict(
    family: &Family,
    candidate: &Mean,
    ladder: &[f64],
    grid: &GridSpec,
    side: CancelSide,
) -> Result<CancellationVerdict> {
    let probe_grid = grid.with_tail_probes();
    let orient = |m: &Mean| match side {
        CancelSide::Right => m.clone(),
        CancelSide::Left => m.dual(),
    };
    // ln(member / candidate) from a gap measured in the working frame.
    let sign = match side {
        CancelSide::Right => 1.0,
        CancelSide::Left => -1.0,
    };
    let cand = orient(candidate);
    let sigma_cand = sigma_preferring_closed(&cand)?;
    let mut checks = Vec::new();
    for (param, member) in members(family, ladder, side)? {
        let m = orient(&member);
        let r = compare(&m, &cand, &probe_grid, DEFAULT_TOL)?;
        let original_verdict = match side {
            CancelSide::Right => r.verdict,
            CancelSide::Left => r.verdict.flip(),
        };
        let mut check = MemberCheck {
            param,
            mean: member.to_string(),
            verdict: original_verdict,
            bounded_by_candidate: r.verdict == Verdict::Le,
            outcome: MemberOutcome::Equal,
            witness: None,
            sigma_member: None,
            sigma_candidate: None,
            sigma_backed: false,
            note: String::new(),
        };
        if r.verdict == Verdict::Equal {
            check.note = "member equals the candidate on the grid".into();
            checks.push(check);
            continue;
        }
        let sm = sigma_preferring_closed(&m)?;
        check.sigma_member = Some(sm.value);
        check.sigma_candidate = Some(sigma_cand.value);
        let reliable = sm.converged && sigma_cand.converged;
        let separated = reliable && sm.value < sigma_cand.value - SIGMA_MARGIN;

        // A grid point with member < candidate (in the working frame).
        let below: Vec<_> = r.below().collect();
        let grid_witness = if separated {
            below.last().copied()
        } else {
            r.strongest(Side::Below)
                .and_then(|w| below.iter().find(|s| s.t == w.t).copied())
        };
        if let Some(s) = grid_witness {
            check.outcome = MemberOutcome::Refuted;
            check.witness = Some(RefutationWitness {
                t: s.t,
                ln_ratio: 2.0 * s.t.atanh(),
                ln_gap: sign * (s.lhs / s.rhs).ln(),
                source: WitnessSource::Grid,
            });
            check.sigma_backed = separated && s.t >= 0.5;
        } else if let Some(w) = far_witness(&m, &cand)? {
            check.outcome = MemberOutcome::Refuted;
            check.witness = Some(RefutationWitness {
                ln_gap: sign * w.ln_gap,
                ..w
            });
            check.sigma_backed = separated;
        } else if separated {
            check.outcome = MemberOutcome::Inconclusive;
            check.note = "characteristic numbers separate but no witness was reached".into();
        } else if reliable {
            check.outcome = MemberOutcome::Dominates;
            check.note = "member lies beyond the candidate at every probe".into();
        } else {
            check.outcome = MemberOutcome::Inconclusive;
            check.note = "no witness and the characteristic numbers did not converge".into();
        }
        checks.push(check);
    }

    let dominance_witness = checks
        .iter()
        .find(|c| c.bounded_by_candidate)
        .map(|c| c.param);
    let counted = || checks.iter().filter(|c| c.outcome != MemberOutcome::Equal);
    let dominated_by_none = counted().all(|c| c.outcome == MemberOutcome::Refuted);
    let sigma_argument_used = checks.iter().any(|c| c.sigma_backed);
    let (verdict, mut note) = if counted().any(|c| c.outcome == MemberOutcome::Dominates) {
        (
            CancelVerdict::Refuted,
            "a family member lies beyond the candidate".to_string(),
        )
    } else if counted().any(|c| c.outcome == MemberOutcome::Inconclusive) {
        (
            CancelVerdict::Inconclusive,
            "some members could be neither placed nor refuted".to_string(),
        )
    } else if dominance_witness.is_none() {
        (
            CancelVerdict::Inconclusive,
            "the candidate bounds no sampled member".to_string(),
        )
    } else {
        (CancelVerdict::Supported, String::new())
    };
    if !note.is_empty() {
        note.push_str("; ");
    }
    note.push_str(EVIDENCE_NOTE);
    Ok(CancellationVerdict {
        candidate: candidate.to_string(),
        family: family.to_string(),
        side,
        ladder: ladder.to_vec(),
        dominates_some_member: dominance_witness.is_some(),
        dominance_witness,
        dominated_by_none,
        sigma_argument_used,
        members: checks,
        verdict,
        note,
    })
}

/// Searches past the grid for a ratio with `m < n`.
fn far_witness(m: &Mean, n: &Mean) -> Result<Option<RefutationWitness>> {
    for z in far_probes() {
        let lm = m.ln_phi_at_z(z)?;
        let ln = n.ln_phi_at_z(z)?;
        let gap = lm - ln;
        if gap < -(1e-9 + 1e-13 * (lm.abs() + ln.abs())) {
            return Ok(Some(RefutationWitness {
                t: z.tanh(),
                ln_ratio: 2.0 * z,
                ln_gap: gap,
                source: WitnessSource::Far,
            }));
        }
    }
    Ok(None)
}

use serde::{Deserialize, Serialize};

use super::compare::{compare, OrderingReport};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::grid::GridSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub family: String,
    /// Ladder in increasing order.
    pub ladder: Vec<f64>,
    /// `instance(p_i)` against `instance(p_{i+1})`.
    pub links: Vec<OrderingReport>,
    pub passed: bool,
}

/// Checks `instance(p) <= instance(q)` for consecutive ladder values `p < q`.
pub fn monotone_in_param(
    family: &Family,
    ladder: &[f64],
    grid: &GridSpec,
    tol: f64,
) -> Result<MonotoneReport> {
    let mut ladder = ladder.to_vec();
    ladder.sort_by(f64::total_cmp);
    ladder.dedup();
    if ladder.len() < 2 {
        return Err(Error::Invalid("ladder needs at least two values".into()));
    }
    let members = ladder
        .iter()
        .map(|&p| family.instance(p))
        .collect::<Result<Vec<_>>>()?;
    let links = members
        .windows(2)
        .map(|w| compare(&w[0], &w[1], grid, tol))
        .collect::<Result<Vec<_>>>()?;
    let passed = links.iter().all(|r| r.is_le());
    Ok(MonotoneReport {
        family: family.to_string(),
        ladder,
        links,
        passed,
    })
}

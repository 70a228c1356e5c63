//! Sampling plans over the ratio parameter `t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// A sorted set of `t` values in `(0, 1)`. Negative `t` is redundant by
/// symmetry. Each `t` stands for the pair `(1 - t, 1 + t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    t_values: Vec<f64>,
    /// Scales used when probing homogeneity.
    pub scale_factors: Vec<f64>,
}

/// Parameters of [`GridSpec::standard`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOptions {
    pub points: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub seed: u64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            points: 256,
            t_min: 1e-6,
            t_max: 1.0 - 1e-8,
            seed: DEFAULT_SEED,
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::standard(GridOptions::default()).expect("default grid options are valid")
    }
}

impl GridSpec {
    /// 256 points: 100 log-spaced in `t` on `[1e-6, 0.5]`, 100 log-spaced in
    /// `1 - t` on `[1e-8, 0.5)`, and 56 seeded uniform draws.
    pub fn standard(opts: GridOptions) -> Result<Self> {
        let GridOptions {
            points,
            t_min,
            t_max,
            seed,
        } = opts;
        if !(t_min > 0.0 && t_min < t_max && t_max < 1.0) {
            return Err(Error::Invalid(format!(
                "grid needs 0 < t_min < t_max < 1, got [{t_min}, {t_max}]"
            )));
        }
        if points < 4 {
            return Err(Error::Invalid("grid needs at least 4 points".into()));
        }
        let n_log = points * 25 / 32;
        let n_low = n_log / 2;
        let n_high = n_log - n_low;
        let n_uniform = points - n_log;
        // The two log ladders meet at the geometric middle of the range,
        // or at 0.5 when that lies inside it.
        let mid = if t_min < 0.5 && t_max > 0.5 {
            0.5
        } else {
            (t_min * t_max).sqrt()
        };
        let mut t = Vec::with_capacity(points);
        t.extend(log_ladder(t_min, mid, n_low));
        // The high ladder is spaced in 1 - t and excludes `mid` itself.
        t.extend(
            log_ladder(1.0 - t_max, 1.0 - mid, n_high + 1)
                .into_iter()
                .take(n_high)
                .map(|e| 1.0 - e),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        t.extend((0..n_uniform).map(|_| rng.gen_range(t_min..t_max)));
        GridSpec::from_values(t)
    }

    /// Grid from explicit `t` values, sorted and deduplicated.
    pub fn from_values(mut t: Vec<f64>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::Invalid("grid must be nonempty".into()));
        }
        if let Some(bad) = t.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
            return Err(Error::Invalid(format!(
                "grid values must lie in (0, 1), got {bad}"
            )));
        }
        t.sort_by(f64::total_cmp);
        t.dedup();
        Ok(GridSpec {
            t_values: t,
            scale_factors: vec![1e-3, 1.0, 1e3],
        })
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn len(&self) -> usize {
        self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_values.is_empty()
    }

    /// Smallest `t` is at most `1e-4`.
    pub fn includes_near_diagonal(&self) -> bool {
        self.t_values[0] <= 1e-4
    }

    /// Largest `t` is at least `1 - 1e-6`.
    pub fn includes_extreme(&self) -> bool {
        self.t_values[self.t_values.len() - 1] >= 1.0 - 1e-6
    }

    /// The same grid with `t = 1 - 10^-k`, `k = 1..=12`, added.
    pub fn with_tail_probes(&self) -> GridSpec {
        let mut t = self.t_values.clone();
        t.extend((1..=12).map(|k| 1.0 - 10f64.powi(-k)));
        let mut g = GridSpec::from_values(t).expect("probe values lie in (0, 1)");
        g.scale_factors = self.scale_factors.clone();
        g
    }
}

/// `n` points from `lo` to `hi` inclusive, evenly spaced in `ln x`.
fn log_ladder(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let steps = (n - 1) as f64;
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / steps).exp())
        .collect()
}

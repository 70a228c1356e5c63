use std::path::PathBuf;

use meanlab::lab::{BoundDirection, CancelSide};
use meanlab::{GridOptions, GridSpec};
use serde::{Deserialize, Serialize};

/// Everything one invocation needs. Serializes to JSON and back unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub grid: GridOverrides,
    /// Comparison tie tolerance; the library default when absent.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub format: Format,
    /// Report destination; standard output when absent.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    Eval {
        mean: String,
        a: f64,
        b: f64,
    },
    Phi {
        mean: String,
        t: f64,
    },
    Sigma {
        mean: String,
    },
    Series {
        mean: String,
        order: usize,
    },
    Compare {
        lhs: String,
        rhs: String,
    },
    Chain {
        means: Vec<String>,
    },
    BestConstant {
        family: String,
        target: String,
        direction: BoundDirection,
        lo: f64,
        hi: f64,
        /// Bisection stops once the bracket is this narrow.
        precision: f64,
    },
    Cancel {
        family: String,
        candidate: String,
        side: CancelSide,
        /// The family's default ladder when absent.
        ladder: Option<Vec<f64>>,
    },
    Identity {
        identity: IdentityName,
        a: f64,
        b: f64,
        s: f64,
    },
    Suite {
        suite: SuiteName,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Phi { .. } => "phi",
            Command::Sigma { .. } => "sigma",
            Command::Series { .. } => "series",
            Command::Compare { .. } => "compare",
            Command::Chain { .. } => "chain",
            Command::BestConstant { .. } => "best-constant",
            Command::Cancel { .. } => "cancel",
            Command::Identity { .. } => "identity",
            Command::Suite { .. } => "suite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityName {
    /// Stolarsky diagonal against the Lehmer mean of the powered arguments.
    StolarskyLehmer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    /// Every check of the verification matrix.
    Full,
}

impl RunConfig {
    /// The mean and family expressions the command refers to.
    pub fn mean_specs(&self) -> Vec<&str> {
        match &self.command {
            Command::Eval { mean, .. }
            | Command::Phi { mean, .. }
            | Command::Sigma { mean }
            | Command::Series { mean, .. } => vec![mean],
            Command::Compare { lhs, rhs } => vec![lhs, rhs],
            Command::Chain { means } => means.iter().map(String::as_str).collect(),
            Command::BestConstant { family, target, .. } => vec![family, target],
            Command::Cancel {
                family, candidate, ..
            } => vec![family, candidate],
            Command::Identity { .. } | Command::Suite { .. } => Vec::new(),
        }
    }
}

/// Partial [`GridOptions`]; unset fields keep the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GridOverrides {
    pub points: Option<usize>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub seed: Option<u64>,
}

impl GridOverrides {
    pub fn options(&self) -> GridOptions {
        let d = GridOptions::default();
        GridOptions {
            points: self.points.unwrap_or(d.points),
            t_min: self.t_min.unwrap_or(d.t_min),
            t_max: self.t_max.unwrap_or(d.t_max),
            seed: self.seed.unwrap_or(d.seed),
        }
    }

    pub fn build(&self) -> meanlab::Result<GridSpec> {
        GridSpec::standard(self.options())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

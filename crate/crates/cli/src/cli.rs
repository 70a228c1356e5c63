use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use meanlab::lab::{BoundDirection, CancelSide};

use crate::config::{Command, Format, GridOverrides, IdentityName, RunConfig, SuiteName};

#[derive(Debug, Parser)]
#[command(
    name = "meanlab",
    version,
    about = "Evaluate bivariate means and check inequalities between them"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    /// Read the whole run from a JSON config instead of the command line.
    #[arg(long, value_name = "PATH", conflicts_with = "print_config")]
    pub config: Option<PathBuf>,

    /// Print the config this invocation resolves to and exit.
    #[arg(long, global = true)]
    pub print_config: bool,

    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Number of grid points.
    #[arg(long, global = true, value_name = "N")]
    pub grid_points: Option<usize>,
    /// Smallest t on the grid.
    #[arg(long, global = true, value_name = "X")]
    pub t_min: Option<f64>,
    /// Largest t on the grid.
    #[arg(long, global = true, value_name = "X")]
    pub t_max: Option<f64>,
    /// Seed for the random part of the grid.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Relative tolerance under which two values count as tied.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, value_name = "FORMAT")]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn direction(s: &str) -> Result<BoundDirection, String> {
    match s {
        "sup_le" | "sup-le" => Ok(BoundDirection::SupLe),
        "inf_ge" | "inf-ge" => Ok(BoundDirection::InfGe),
        _ => Err(format!("expected sup_le or inf_ge, got '{s}'")),
    }
}

fn side(s: &str) -> Result<CancelSide, String> {
    match s {
        "right" => Ok(CancelSide::Right),
        "left" => Ok(CancelSide::Left),
        _ => Err(format!("expected right or left, got '{s}'")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Value of a mean at (a, b).
    #[command(allow_negative_numbers = true)]
    Eval { mean: String, a: f64, b: f64 },
    /// Characteristic function of a mean at t.
    #[command(allow_negative_numbers = true)]
    Phi { mean: String, t: f64 },
    /// Characteristic number: the limit of M/A as one argument goes to zero.
    Sigma { mean: String },
    /// Taylor coefficients of the characteristic function at 0.
    Series {
        mean: String,
        #[arg(default_value_t = 3)]
        order: usize,
    },
    /// Pointwise comparison of two means on the grid.
    Compare { lhs: String, rhs: String },
    /// Checks that each mean is below the next one.
    Chain {
        #[arg(required = true, num_args = 2..)]
        means: Vec<String>,
    },
    /// Bisects a family parameter for the sharpest bound against a target.
    #[command(allow_negative_numbers = true)]
    BestConstant {
        family: String,
        target: String,
        /// sup_le or inf_ge.
        #[arg(value_parser = direction)]
        direction: BoundDirection,
        lo: f64,
        hi: f64,
        /// Width at which bisection stops.
        #[arg(long, default_value_t = 1e-6)]
        precision: f64,
    },
    /// Whether a candidate mean cancels a family.
    #[command(allow_negative_numbers = true)]
    Cancel {
        family: String,
        candidate: String,
        /// right or left.
        #[arg(long, value_parser = side, default_value = "right")]
        side: CancelSide,
        /// Comma-separated parameter ladder.
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<f64>>,
    },
    /// Residual of a closed-form identity.
    #[command(allow_negative_numbers = true)]
    Identity {
        #[arg(value_enum)]
        identity: IdentityName,
        a: f64,
        b: f64,
        s: f64,
    },
    /// Runs the built-in verification checks.
    Suite {
        #[arg(value_enum, default_value = "full")]
        suite: SuiteName,
    },
}

impl Sub {
    fn command(self) -> Command {
        match self {
            Sub::Eval { mean, a, b } => Command::Eval { mean, a, b },
            Sub::Phi { mean, t } => Command::Phi { mean, t },
            Sub::Sigma { mean } => Command::Sigma { mean },
            Sub::Series { mean, order } => Command::Series { mean, order },
            Sub::Compare { lhs, rhs } => Command::Compare { lhs, rhs },
            Sub::Chain { means } => Command::Chain { means },
            Sub::BestConstant {
                family,
                target,
                direction,
                lo,
                hi,
                precision,
            } => Command::BestConstant {
                family,
                target,
                direction,
                lo,
                hi,
                precision,
            },
            Sub::Cancel {
                family,
                candidate,
                side,
                ladder,
            } => Command::Cancel {
                family,
                candidate,
                side,
                ladder,
            },
            Sub::Identity { identity, a, b, s } => Command::Identity { identity, a, b, s },
            Sub::Suite { suite } => Command::Suite { suite },
        }
    }
}

impl Cli {
    /// The run this invocation describes. Flags given on the command line
    /// override the corresponding fields of `--config`.
    pub fn resolve(self) -> Result<RunConfig> {
        let g = self.global;
        let mut cfg = match (self.config, self.command) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str::<RunConfig>(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            }
            (Some(_), Some(_)) => anyhow::bail!("give either --config or a subcommand, not both"),
            (None, Some(sub)) => RunConfig {
                command: sub.command(),
                grid: GridOverrides::default(),
                tol: None,
                format: Format::default(),
                out: None,
            },
            (None, None) => anyhow::bail!("no subcommand given; see --help"),
        };
        let grid = &mut cfg.grid;
        grid.points = g.grid_points.or(grid.points);
        grid.t_min = g.t_min.or(grid.t_min);
        grid.t_max = g.t_max.or(grid.t_max);
        grid.seed = g.seed.or(grid.seed);
        cfg.tol = g.tol.or(cfg.tol);
        cfg.format = g.format.unwrap_or(cfg.format);
        cfg.out = g.out.or(cfg.out);
        Ok(cfg)
    }
}

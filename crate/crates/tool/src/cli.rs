//! `omega` command-line interface.
//!
//! Exit status: 0 on success or a passing verdict, 1 when a verification
//! finds a counterexample (or on I/O failure), 2 on usage errors, 3 when a
//! traversal or window exceeds its budget.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use omega_core::dyadic::{dyadic_spec, poly_spec};
use omega_core::fit::{fit_growth, GrowthModel};
use omega_core::metrics::{ball, bfs_distance, folner_ratio};
use omega_core::prime::PrimeTables;
use omega_core::{edges_in_window, GraphSpec, DEFAULT_CAP};
use serde_json::json;

use crate::error::ToolError;
use crate::formats;
use crate::spec_file;
use crate::verify::{self, Lemma, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "omega", version, about = "Omega-periodic graphs on the integers: distances, balls, growth and verification")]
pub struct Cli {
    /// Visited-vertex budget for every traversal.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dyadic,
    Poly,
    Prime,
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, value_enum, default_value_t = Family::Dyadic)]
    pub family: Family,
    /// Truncation level (number of layers above E_0 for dyadic/prime,
    /// largest exponent k of E_(2^k) for poly).
    #[arg(long = "K", visible_alias = "M", default_value_t = 8)]
    pub truncation: u32,
    /// JSON spec file; implies `--family custom`.
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
}

impl GraphArgs {
    pub fn build(&self) -> Result<GraphSpec, ToolError> {
        match (&self.spec_file, self.family) {
            (Some(path), Family::Custom | Family::Dyadic) => {
                spec_file::from_json(&fs::read_to_string(path)?)
            }
            (Some(_), _) => Err(ToolError::Usage("--spec-file conflicts with --family".into())),
            (None, Family::Custom) => Err(ToolError::Usage("--family custom needs --spec-file".into())),
            (None, Family::Dyadic) => Ok(dyadic_spec(self.truncation)),
            (None, Family::Poly) => Ok(poly_spec(self.truncation)),
            (None, Family::Prime) => {
                if self.truncation == 0 {
                    return Err(ToolError::Usage("prime family needs --M >= 1".into()));
                }
                Ok(PrimeTables::new(self.truncation).spec(self.truncation))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeFormat {
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ModelArg {
    Poly,
    QuadraticLog,
    Exponential,
}

impl From<ModelArg> for GrowthModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Poly => GrowthModel::Poly,
            ModelArg::QuadraticLog => GrowthModel::QuadraticLog,
            ModelArg::Exponential => GrowthModel::Exponential,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact graph distance between two vertices.
    Dist {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        from: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        to: BigInt,
    },
    /// Ball volumes |B_j(center)| for j = 0..=radius.
    Ball {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big, default_value = "0")]
        center: BigInt,
        #[arg(long)]
        radius: u64,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary ratios of the intervals [-n, n].
    Folner {
        #[command(flatten)]
        graph: GraphArgs,
        /// Half-widths, comma separated.
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least-squares growth-model fit of a ball curve.
    Fit {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big, default_value = "0")]
        center: BigInt,
        #[arg(long)]
        radius: u64,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Run one verification suite and print its JSON verdict.
    Verify {
        #[arg(value_enum)]
        lemma: Lemma,
        #[arg(long)]
        imax: Option<u32>,
        #[arg(long)]
        jmax: Option<u64>,
        #[arg(long = "K")]
        k: Option<u32>,
        #[arg(long = "M")]
        m: Option<u32>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        lo: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        hi: Option<BigInt>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Materialize the edges inside a window.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        lo: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_big)]
        hi: BigInt,
        #[arg(long, value_enum, default_value_t = EdgeFormat::Csv)]
        format: EdgeFormat,
        /// Largest window (in vertices) that may be materialized.
        #[arg(long, default_value_t = 10_000_000)]
        max_window: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The binary tree rooted at 2 in the prime family, as JSON.
    Tree {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a family's spec in the JSON spec-file format.
    Spec {
        #[command(flatten)]
        graph: GraphArgs,
    },
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("{s:?} is not a decimal integer"))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), ToolError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: Cli) -> Result<i32, ToolError> {
    let cap = cli.cap;
    if cap == 0 {
        return Err(ToolError::Usage("--cap must be at least 1".into()));
    }
    match cli.command {
        Command::Dist { graph, from, to } => {
            let spec = graph.build()?;
            let d = bfs_distance(&spec, &from, &to, cap)?;
            emit(
                &None,
                &pretty(&json!({
                    "spec": spec.name(),
                    "from": from.to_string(),
                    "to": to.to_string(),
                    "distance": d,
                })),
            )?;
        }
        Command::Ball { graph, center, radius, format, out } => {
            let curve = ball(&graph.build()?, &center, radius, cap)?;
            let text = match format {
                DataFormat::Csv => formats::growth_csv(&curve),
                DataFormat::Json => pretty(&formats::growth_json(&curve)),
            };
            emit(&out, &text)?;
        }
        Command::Folner { graph, n, format, out } => {
            let spec = graph.build()?;
            if n.contains(&0) {
                return Err(ToolError::Usage("--n values must be positive".into()));
            }
            let rows: Vec<_> = n.iter().map(|&n| folner_ratio(&spec, n)).collect();
            let text = match format {
                DataFormat::Csv => formats::folner_csv(&rows),
                DataFormat::Json => pretty(&formats::folner_json(spec.name(), &rows)),
            };
            emit(&out, &text)?;
        }
        Command::Fit { graph, center, radius, model } => {
            let spec = graph.build()?;
            let f = fit_growth(&ball(&spec, &center, radius, cap)?, model.into())?;
            emit(
                &None,
                &pretty(&json!({
                    "spec": spec.name(),
                    "model": f.model.name(),
                    "coefficients": f.coefficients,
                    "residual": f.residual,
                    "points": f.points,
                })),
            )?;
        }
        Command::Verify { lemma, imax, jmax, k, m, lo, hi, depth } => {
            let opts = VerifyOptions { imax, jmax, k, m, lo, hi, depth, cap };
            let verdict = verify::run(lemma, &opts)?;
            emit(&None, &pretty(&serde_json::to_value(&verdict).expect("verdicts serialize")))?;
            return Ok(if verdict.pass { 0 } else { 1 });
        }
        Command::Export { graph, lo, hi, format, max_window, out } => {
            let spec = graph.build()?;
            if lo > hi {
                return Err(ToolError::Usage(format!("empty window [{lo}, {hi}]")));
            }
            let size: BigInt = &hi - &lo + 1u32;
            if size.to_u64().map_or(true, |s| s > max_window) {
                return Err(ToolError::WindowTooLarge { size: size.to_string(), budget: max_window });
            }
            let edges = edges_in_window(&spec, &lo, &hi)?;
            let text = match format {
                EdgeFormat::Csv => formats::edges_csv(&edges),
                EdgeFormat::Dot => formats::edges_dot(spec.name(), &edges),
            };
            emit(&out, &text)?;
        }
        Command::Tree { depth, out } => {
            let tables = PrimeTables::new(depth.max(1));
            emit(&out, &pretty(&formats::tree_json(&BigInt::from(2), &tables.tree_edges(depth))))?;
        }
        Command::Spec { graph } => {
            let mut text = spec_file::to_json(&graph.build()?);
            text.push('\n');
            emit(&None, &text)?;
        }
    }
    Ok(0)
}

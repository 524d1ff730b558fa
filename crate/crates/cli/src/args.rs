use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "jetlink", version, about = "Orbit-map images of discriminant linking classes")]
pub struct Cli {
    /// Term order used for every reduction.
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    /// Worker threads for grid scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List built-in families and loaded presentations.
    Spaces {
        /// Presentation files to load and list.
        #[arg(long)]
        config: Vec<PathBuf>,
    },
    /// Orbit classes for the chosen cycles.
    Compute(ComputeArgs),
    /// Surjectivity verdict of the orbit map for one bundle.
    Check(BundleArgs),
    /// Verdicts over a grid of bundle parameters.
    Scan(BundleArgs),
    /// Rank of F_X over a sample of degree-2 classes.
    GenericCheck(GenericArgs),
    /// Compare orbit classes on P^(n+1) and its invariant quadric.
    DivisorCheck(DivisorArgs),
    /// Render a report document, or a fresh computation, in another format.
    Export(ExportArgs),
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpaceArgs {
    /// Built-in family id (pn, odd-quadric, even-quadric, gr, so-pn).
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Presentation file used instead of a built-in.
    #[arg(long, conflicts_with = "space")]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BundleArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "O")]
    pub bundle: String,
    /// Value of the parameter d: an integer, a range a..b or a list a,b,c.
    #[arg(long)]
    pub d: Option<String>,
    /// Other parameters as name=value (same value syntax as --d).
    #[arg(long = "param")]
    pub params: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub bundle: BundleArgs,
    /// Cycle name or `all`.
    #[arg(long, default_value = "all")]
    pub cycle: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenericArgs {
    #[command(flatten)]
    pub bundle: BundleArgs,
    /// Sample point as a degree-2 polynomial; repeatable. Without it, the
    /// first Chern class of the bundle over the parameter grid is used.
    #[arg(long)]
    pub sample: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DivisorArgs {
    /// Dimension of the quadric; the ambient space is P^(n+1).
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: i64,
    /// Ratio r; defaults to 2/d.
    #[arg(long)]
    pub r: Option<String>,
    /// Cycle on P^(n+1), or `all` for every positive-dimensional one.
    #[arg(long, default_value = "all")]
    pub cycle: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExportArgs {
    /// Report document (JSON) to render; without it, `compute` runs on the
    /// given request.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub compute: ComputeArgs,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tangram_core::{CountMode, TanSetKind};

#[derive(Debug, Parser)]
#[command(name = "tangram", version, about = "Enumerate tangram partitions of the twenty convex shapes")]
pub struct Cli {
    /// Shape-numbering file; defaults to the built-in one.
    #[arg(long, global = true, env = "TANGRAM_NUMBERING")]
    pub numbering: Option<PathBuf>,
    /// Directory for generated files.
    #[arg(long, global = true, env = "TANGRAM_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the partitions of one shape and write them as JSON.
    Solve(SolveArgs),
    /// Print the number of partitions of one shape.
    Count(ShapeArgs),
    /// Check every shape count, the census and the strip cut-and-paste structure.
    Verify(VerifyArgs),
    /// List the twenty convex shapes with their coverability.
    Census(CensusArgs),
    /// Draw one partition or a sheet of all partitions of a shape.
    Render(RenderArgs),
    /// Cut edges and twins of the rectangle strip.
    Strips(StripsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    Chinese,
    Japanese,
}

impl From<SetArg> for TanSetKind {
    fn from(s: SetArg) -> TanSetKind {
        match s {
            SetArg::Chinese => TanSetKind::Chinese,
            SetArg::Japanese => TanSetKind::Japanese,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Canonical,
    Labeled,
    Colored,
}

impl From<ModeArg> for CountMode {
    fn from(m: ModeArg) -> CountMode {
        match m {
            ModeArg::Canonical => CountMode::Canonical,
            ModeArg::Labeled => CountMode::Labeled,
            ModeArg::Colored => CountMode::Colored,
        }
    }
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Shape number (1-20, optionally as J07) or a region key.
    pub shape: String,
    #[arg(long, value_enum, default_value = "japanese")]
    pub set: SetArg,
    #[arg(long, value_enum, default_value = "canonical")]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// JSON output path; defaults to `<shape>_<set>_<mode>.json` in the output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a sheet of the listed partitions.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Write the machine-readable report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write one partition sheet per shape into this directory.
    #[arg(long)]
    pub sheets: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Write `census.svg` to the output directory.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Draw all partitions on one sheet.
    #[arg(long)]
    pub sheet: bool,
    /// 1-based partition index when drawing a single partition.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
    #[arg(long, default_value_t = 4)]
    pub columns: usize,
    #[arg(long)]
    pub grid: bool,
}

#[derive(Debug, Args)]
pub struct StripsArgs {
    /// Run the cut-and-paste check; exit 1 if it fails.
    #[arg(long)]
    pub verify: bool,
    /// Write the check report here (implies --verify).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use valsym::SymmetryMode;

#[derive(Debug, Parser)]
#[command(
    name = "valsym",
    version,
    about = "Finite-domain solver with value-symmetry breaking"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a model under one symmetry-breaking mode.
    Solve(SolveArgs),
    /// Run several modes on the same model and tabulate search statistics.
    Compare(CompareArgs),
    /// Check that each mode returns exactly one solution per orbit.
    Verify(VerifyArgs),
    /// Search for small instances where decomposed encodings prune less than
    /// the exact value-symmetry filter.
    Witness(WitnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    AllInterval,
    Coloring,
    Pigeonhole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    None,
    StaticLex,
    Precedence,
    Channel,
    #[value(name = "getree")]
    GeTree,
}

impl From<ModeArg> for SymmetryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::None => SymmetryMode::None,
            ModeArg::StaticLex => SymmetryMode::StaticLex,
            ModeArg::Precedence => SymmetryMode::Precedence,
            ModeArg::Channel => SymmetryMode::Channel,
            ModeArg::GeTree => SymmetryMode::GeTree,
        }
    }
}

/// Hand-posted symmetry-breaking constraints for the all-interval series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Extra {
    /// `X_1 < X_n`
    FirstBelowLast,
    /// lex-leader for value inversion
    InversionLex,
    /// lex-leader for reversal composed with inversion
    ComposedLex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarOrderArg {
    Input,
    MinDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValOrderArg {
    Ascending,
    Descending,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Size parameter (all-interval length, pigeonhole variables).
    #[arg(long)]
    pub n: Option<usize>,
    /// DIMACS edge list for coloring.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Number of colors for coloring.
    #[arg(long)]
    pub colors: Option<usize>,
    /// Extra all-interval constraints, comma-separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub extra: Vec<Extra>,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Enumeration budget (search nodes). Defaults to $VALSYM_BUDGET or 10000000.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value = "input")]
    pub var_order: VarOrderArg,
    #[arg(long, value_enum, default_value = "ascending")]
    pub val_order: ValOrderArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "none")]
    pub mode: ModeArg,
    /// Enumerate every solution.
    #[arg(long, conflicts_with = "limit")]
    pub all: bool,
    /// Stop after K solutions (default 1).
    #[arg(long, value_name = "K")]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Modes to compare (at least two), repeated or comma-separated.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub mode: Vec<ModeArg>,
    /// Sweep the size parameter from --n up to this value.
    #[arg(long, value_name = "N")]
    pub n_to: Option<usize>,
    /// Enumerate every solution (the default).
    #[arg(long, conflicts_with = "limit")]
    pub all: bool,
    #[arg(long, value_name = "K")]
    pub limit: Option<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Modes to check; defaults to every symmetry-breaking mode.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub mode: Vec<ModeArg>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// one lex-leader constraint per symmetry vs the exact filter
    Decomposition,
    /// first-occurrence channeling with two symmetries vs the exact filter
    Channel,
}

#[derive(Debug, Clone, Args)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub kind: WitnessKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances to try.
    #[arg(long, default_value_t = 5000)]
    pub tries: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

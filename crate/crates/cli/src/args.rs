use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qhelper",
    version,
    about = "Rate regions for source compression with a quantum helper",
    after_help = "States: bell | isotropic:p | product:h1,h2 | random:dA,dB,seed | inline JSON | JSON file.\n\
                  isotropic:p is p * Phi + (1 - p) * I/4 with Phi the Bell projector.\n\
                  Set QHELPER_THREADS to cap the worker pool.\n\
                  Exit status: 0 ok, 1 error, 2 invalid input, 3 optimizer hit --max-iters."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Optimizer step tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropies and mutual informations of a state
    Entropy(EntropyArgs),
    /// Rate pair achieved by one helper channel
    Rates(RatesArgs),
    /// Trace the optimal rate region boundary
    Frontier(FrontierArgs),
    /// Check the entropy identities behind the converse on n copies
    Audit(AuditArgs),
    /// Parse, evaluate and certify resource inequalities
    Ri(RiArgs),
    /// List state, channel and resource-inequality presets
    Presets,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long)]
    pub state: String,
    /// Quantities such as `H(A)`, `H(A|B)`, `I(A;B|C)`; default: all
    /// single-system entropies, the joint entropy and pairwise informations
    pub quantities: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RatesArgs {
    #[arg(long)]
    pub state: String,
    /// Helper channel on B: preset name, JSON, or JSON file
    #[arg(long)]
    pub channel: String,
}

#[derive(Debug, Args)]
pub struct FrontierArgs {
    #[arg(long)]
    pub state: String,
    /// Helper output dimension; defaults to dim B
    #[arg(long)]
    pub dim_c: Option<usize>,
    /// Helper environment dimension; defaults to dim B
    #[arg(long)]
    pub dim_e: Option<usize>,
    /// Comma-separated weights on r1
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Two-column `r2 r1` hull file; defaults to `<out>.hull.dat` when --out is set
    #[arg(long)]
    pub hull_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub state: String,
    /// Number of source copies
    #[arg(short, long, default_value_t = 2)]
    pub n: usize,
    /// Auxiliary channel on each B; a seeded random isometry when omitted
    #[arg(long)]
    pub channel: Option<String>,
    /// Output dimension of the random auxiliary isometry; defaults to dim B
    #[arg(long)]
    pub dim_c: Option<usize>,
    /// Environment dimension of the random auxiliary isometry
    #[arg(long, default_value_t = 2)]
    pub dim_e: usize,
    /// Apply one isometry to all of B^n instead of copy by copy
    #[arg(long)]
    pub joint: bool,
}

#[derive(Debug, Args)]
pub struct RiArgs {
    /// File with one resource inequality per line
    pub file: Option<PathBuf>,
    /// Inline resource inequality; repeatable
    #[arg(long)]
    pub text: Vec<String>,
    /// Evaluate every statement on this state
    #[arg(long)]
    pub bind: Option<String>,
    /// Label bindings such as `A=X` or `R=` (trivial); repeatable
    #[arg(long = "map")]
    pub maps: Vec<String>,
    /// Certificate JSON: {target, steps, bindings, samples}
    #[arg(long)]
    pub certify: Option<PathBuf>,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relnet_core::{LogBase, NormalizeMethod};

#[derive(Parser)]
#[command(
    name = "relnet",
    version,
    about = "Gene relevance networks from two-class expression matrices: \
             t-test filtering, pairwise mutual information, top-K network construction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the full pipeline: parse, preprocess, filter, score, build, export
    Infer(InferArgs),
    /// Generate a deterministic synthetic dataset with planted structure
    Synth(SynthArgs),
    /// Emit a per-sample statistics table for external plotting
    Summarize(SummarizeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Tsv,
    SeriesMatrix,
}

impl InputFormat {
    pub fn label(self) -> &'static str {
        match self {
            InputFormat::Tsv => "tsv",
            InputFormat::SeriesMatrix => "series-matrix",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBaseArg {
    /// Bits
    #[value(name = "2")]
    Two,
    /// Nats
    E,
}

impl From<LogBaseArg> for LogBase {
    fn from(v: LogBaseArg) -> Self {
        match v {
            LogBaseArg::Two => LogBase::Bits,
            LogBaseArg::E => LogBase::Nats,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    None,
    Zscore,
}

impl From<NormalizeArg> for NormalizeMethod {
    fn from(v: NormalizeArg) -> Self {
        match v {
            NormalizeArg::None => NormalizeMethod::None,
            NormalizeArg::Zscore => NormalizeMethod::ZscorePerGene,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitKind {
    Edgelist,
    Graphml,
    Dot,
    Json,
    MiMatrix,
    DegReport,
    Summary,
}

impl EmitKind {
    pub fn label(self) -> &'static str {
        match self {
            EmitKind::Edgelist => "edgelist",
            EmitKind::Graphml => "graphml",
            EmitKind::Dot => "dot",
            EmitKind::Json => "json",
            EmitKind::MiMatrix => "mi-matrix",
            EmitKind::DegReport => "deg-report",
            EmitKind::Summary => "summary",
        }
    }
}

#[derive(Args)]
pub struct InferArgs {
    /// Expression matrix file
    #[arg(long)]
    pub input: PathBuf,

    /// Input file format
    #[arg(long, value_enum, default_value_t = InputFormat::Tsv)]
    pub format: InputFormat,

    /// Two-column label file: sample_id<TAB>class, no header
    #[arg(long)]
    pub labels: PathBuf,

    /// Significance level; genes with p strictly below it are kept
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,

    /// Edge counts to retain, repeatable or comma-separated
    #[arg(long = "top-k", value_delimiter = ',', default_value = "30")]
    pub top_k: Vec<usize>,

    /// Keep all pairs with MI at or above this value instead of top-K
    #[arg(long, conflicts_with = "top_k")]
    pub min_mi: Option<f64>,

    /// Histogram bins per gene; defaults to ceil(log2 M) + 1
    #[arg(long)]
    pub bins: Option<u16>,

    /// Entropy log base
    #[arg(long, value_enum, default_value_t = LogBaseArg::Two)]
    pub log_base: LogBaseArg,

    /// Per-gene normalization applied after imputation
    #[arg(long, value_enum, default_value_t = NormalizeArg::Zscore)]
    pub normalize: NormalizeArg,

    /// Apply log2(x+1) before normalizing
    #[arg(long)]
    pub log2: bool,

    /// Drop genes whose missing fraction exceeds this value
    #[arg(long, default_value_t = 0.5)]
    pub drop_fraction: f64,

    /// Directory for artifacts
    #[arg(long, env = "RELNET_OUT_DIR", default_value = "relnet-out")]
    pub out_dir: PathBuf,

    /// Artifacts to write, comma-separated
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "edgelist,json"
    )]
    pub emit: Vec<EmitKind>,

    /// Worker threads for pairwise scoring; 0 uses all cores
    #[arg(long, env = "RELNET_WORKERS", default_value_t = 0)]
    pub workers: usize,
}

#[derive(Args)]
pub struct SynthArgs {
    /// Directory for the generated expression.tsv, labels.tsv, truth.json
    #[arg(long, default_value = "synth-out")]
    pub out_dir: PathBuf,

    #[arg(long, default_value_t = 50)]
    pub genes: usize,

    #[arg(long, default_value_t = 12)]
    pub tumor_samples: usize,

    #[arg(long, default_value_t = 8)]
    pub normal_samples: usize,

    /// Genes with a planted tumor-class mean shift
    #[arg(long, default_value_t = 10)]
    pub deg_count: usize,

    #[arg(long, default_value_t = 4.0)]
    pub deg_shift: f64,

    /// Planted dependent pairs (y = x + noise), two genes each
    #[arg(long, default_value_t = 10)]
    pub pair_count: usize,

    #[arg(long, default_value_t = 0.05)]
    pub pair_noise: f64,

    /// Seed; the output is byte-identical for a fixed seed
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Args)]
pub struct SummarizeArgs {
    /// Expression matrix file
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = InputFormat::Tsv)]
    pub format: InputFormat,

    /// Two-column label file: sample_id<TAB>class, no header
    #[arg(long)]
    pub labels: PathBuf,

    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Drop genes whose missing fraction exceeds this value before imputing
    #[arg(long, default_value_t = 0.5)]
    pub drop_fraction: f64,
}

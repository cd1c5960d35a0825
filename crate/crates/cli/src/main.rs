//! `tsgraph` — time series to networks, on the command line.
//!
//! Two pipelines:
//!   * set of series → pairwise distance matrix (whole, or in parts for job
//!     arrays, merged back) → network → stats / communities;
//!   * single series → visibility / transition / recurrence / window-proximity
//!     network.
//!
//! Data is written to files named by --out; reports go to stdout and
//! diagnostics to stderr. Every command is a deterministic function of its
//! arguments and input bytes: randomized steps take a mandatory --seed, and
//! --workers never changes output bytes, only wall time.
//!
//! Exit codes: 0 success, 2 bad usage or parameters, 3 unreadable or
//! malformed data, 4 a distance kernel failed on a concrete pair,
//! 5 an incomplete part merge.

mod commands;
mod config;
mod params;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsgraph::Error;

use crate::commands::SingleOut;
use crate::config::Config;
use crate::params::{BuilderArgs, EventArgs, MetricArgs};

#[derive(Debug, Parser)]
#[command(
    name = "tsgraph",
    version,
    about = "Turn time series into proximity networks and analyze them",
    max_term_width = 100
)]
struct Cli {
    /// Flat key=value file supplying defaults for long options;
    /// explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for the parallel stages. Defaults to the number of
    /// available CPUs; never affects output bytes.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

// Parsed once and consumed immediately; the size spread between variants
// does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
enum Command {
    /// Pairwise distance matrix over a set of series.
    Dist(DistCmd),
    /// One slice of a distance matrix, for distributing across jobs.
    DistPart(DistPartCmd),
    /// Reassemble part files into the full matrix.
    Merge(MergeCmd),
    /// Build a network from a distance matrix.
    Net(NetCmd),
    /// Build a network from one series.
    #[command(subcommand)]
    Single(SingleCmd),
    /// Node, edge, density, degree, and component summary of a network.
    Stats(StatsCmd),
    /// Edge-betweenness communities and their modularity.
    Communities(CommunitiesCmd),
    /// Synthetic datasets for smoke tests and examples.
    #[command(subcommand)]
    Generate(GenerateCmd),
}

#[derive(Debug, Args)]
struct DistCmd {
    /// Wide CSV (one column per series) or a directory of one-series CSVs.
    input: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    events: EventArgs,
    /// Output matrix CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistPartCmd {
    /// Wide CSV or a directory of one-series CSVs (directories stream:
    /// at most two series are in memory at once).
    input: PathBuf,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    events: EventArgs,
    /// 1-based index of this part.
    #[arg(long)]
    part: usize,
    /// Total number of parts.
    #[arg(long)]
    of: usize,
    /// Directory receiving part_<i>_of_<k>.csv.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MergeCmd {
    /// Directory holding the part_<i>_of_<k>.csv files.
    parts: PathBuf,
    /// The original series input; supplies the matrix labels.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of series; labels become "1".."n". Alternative to --input.
    #[arg(long)]
    n: Option<usize>,
    /// Output matrix CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NetCmd {
    /// Distance matrix CSV.
    matrix: PathBuf,
    #[command(flatten)]
    builder: BuilderArgs,
    /// Min-max normalize distances to [0, 1] first (required by the
    /// weighted builder unless distances already are).
    #[arg(long)]
    normalize: bool,
    /// Output network file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: edgelist (TSV) or graphml.
    #[arg(long)]
    format: Option<String>,
}

// Parsed once and consumed immediately; the size spread between variants
// does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Subcommand)]
enum SingleCmd {
    /// Visibility graph: time points linked when they see each other
    /// over the intervening bars.
    Vg(VgCmd),
    /// Transition network between value bins, edges weighted by
    /// transition counts.
    Qn(QnCmd),
    /// Recurrence network of delay-embedded states.
    Rn(RnCmd),
    /// Sliding windows compared as a proximity network.
    Windows(WindowsCmd),
}

#[derive(Debug, Args)]
struct VgCmd {
    /// CSV holding exactly one series.
    input: PathBuf,
    /// natural (line of sight) or horizontal. Default natural.
    #[arg(long)]
    kind: Option<String>,
    /// Orient edges from earlier to later time points.
    #[arg(long)]
    directed: bool,
    /// Drop edges spanning more than this many time steps.
    #[arg(long)]
    limit: Option<usize>,
    /// naive or divide-conquer (identical output). Default divide-conquer.
    #[arg(long)]
    vg_algorithm: Option<String>,
    /// Output network file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: edgelist (TSV) or graphml.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
struct QnCmd {
    /// CSV holding exactly one series.
    input: PathBuf,
    /// Number of equal-width value bins.
    #[arg(long)]
    breaks: Option<usize>,
    /// Output network file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: edgelist (TSV) or graphml.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
struct RnCmd {
    /// CSV holding exactly one series.
    input: PathBuf,
    /// Embedding dimension.
    #[arg(long)]
    m: Option<usize>,
    /// Embedding delay (in samples).
    #[arg(long)]
    delay: Option<usize>,
    /// Link states at distance <= radius.
    #[arg(long)]
    radius: Option<f64>,
    /// State-space metric: euclidean, manhattan, chebyshev.
    /// Default euclidean.
    #[arg(long)]
    space: Option<String>,
    /// Output network file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: edgelist (TSV) or graphml.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
struct WindowsCmd {
    /// CSV holding exactly one series.
    input: PathBuf,
    /// Window width (in samples).
    #[arg(long)]
    width: Option<usize>,
    /// Step between window starts (--step also works). Default 1.
    #[arg(long, visible_alias = "step")]
    by: Option<usize>,
    #[command(flatten)]
    metric: MetricArgs,
    #[command(flatten)]
    builder: BuilderArgs,
    /// Output network file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: edgelist (TSV) or graphml.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
struct StatsCmd {
    /// Network edge list (TSV).
    network: PathBuf,
    /// Interpret the edge list as directed.
    #[arg(long)]
    directed: bool,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CommunitiesCmd {
    /// Undirected network edge list (TSV).
    network: PathBuf,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum GenerateCmd {
    /// Families of noisy sine and cosine series (wide CSV).
    Sincos(SincosCmd),
    /// Uniformly random event times as a 0/1 indicator CSV.
    Events(EventsCmd),
}

#[derive(Debug, Args)]
struct SincosCmd {
    /// Series per family.
    #[arg(long)]
    each: Option<usize>,
    /// Observations per series.
    #[arg(long)]
    length: Option<usize>,
    /// Standard deviation of the added Gaussian noise.
    #[arg(long)]
    noise: Option<f64>,
    /// RNG seed (mandatory: output is a pure function of the arguments).
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EventsCmd {
    /// Length of the observation window.
    #[arg(long)]
    horizon: Option<usize>,
    /// Number of events to draw.
    #[arg(long)]
    n: Option<usize>,
    /// RNG seed (mandatory: output is a pure function of the arguments).
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent event series (columns). Column i draws from
    /// seed + i - 1. Default 1.
    #[arg(long)]
    count: Option<usize>,
    /// Column name in the output CSV (suffixed _i when --count > 1).
    /// Default "events".
    #[arg(long)]
    id: Option<String>,
    /// Output CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Maps library errors onto the documented exit codes.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::EmptyWindowSet { .. } | Error::AsymmetricKernel => 2,
        Error::Data { .. } | Error::Io { .. } | Error::DegenerateInput(_) => 3,
        Error::MergeConflict { .. } => 3,
        Error::KernelFailure { .. } => 4,
        Error::IncompleteMerge { .. } => 5,
        Error::InLayer { source, .. } => exit_code(source),
    }
}

fn run(cli: Cli) -> tsgraph::Result<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let workers = cfg.or(cli.workers, "workers", default_workers())?;
    match cli.command {
        Command::Dist(c) => {
            commands::cmd_dist(&c.input, &c.metric, &c.events, c.out, &cfg, workers)
        }
        Command::DistPart(c) => commands::cmd_dist_part(
            &c.input, &c.metric, &c.events, c.part, c.of, c.out, &cfg,
        ),
        Command::Merge(c) => commands::cmd_merge(&c.parts, c.input, c.n, c.out, &cfg),
        Command::Net(c) => {
            commands::cmd_net(&c.matrix, &c.builder, c.normalize, c.out, c.format, &cfg)
        }
        Command::Single(single) => match single {
            SingleCmd::Vg(c) => commands::cmd_single_vg(
                &c.input,
                c.kind,
                c.directed,
                c.limit,
                c.vg_algorithm,
                &SingleOut { out: c.out, format: c.format },
                &cfg,
                workers,
            ),
            SingleCmd::Qn(c) => commands::cmd_single_qn(
                &c.input,
                c.breaks,
                &SingleOut { out: c.out, format: c.format },
                &cfg,
            ),
            SingleCmd::Rn(c) => commands::cmd_single_rn(
                &c.input,
                c.m,
                c.delay,
                c.radius,
                c.space,
                &SingleOut { out: c.out, format: c.format },
                &cfg,
            ),
            SingleCmd::Windows(c) => commands::cmd_single_windows(
                &c.input,
                c.width,
                c.by,
                &c.metric,
                &c.builder,
                &SingleOut { out: c.out, format: c.format },
                &cfg,
                workers,
            ),
        },
        Command::Stats(c) => commands::cmd_stats(&c.network, c.directed, c.json),
        Command::Communities(c) => commands::cmd_communities(&c.network, c.json),
        Command::Generate(generate) => match generate {
            GenerateCmd::Sincos(c) => {
                commands::cmd_generate_sincos(c.each, c.length, c.noise, c.seed, c.out, &cfg)
            }
            GenerateCmd::Events(c) => {
                commands::cmd_generate_events(c.horizon, c.n, c.seed, c.count, c.id, c.out, &cfg)
            }
        },
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version displays are successes; everything else is
            // a usage error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

//! Translating textual option values into the library's typed parameters.

use clap::Args;

use tsgraph::dist::{
    CorrelationMode, EsMode, EsParams, EsTau, EventMetric, FisherSpec, NmiNorm, SeriesMetric,
    SurrogateSpec, VrKernel, VrParams,
};
use tsgraph::net::NetBuilder;
use tsgraph::{BinRule, Error, EventDirection, Result};

use crate::config::Config;

/// Options shared by every command that evaluates a pairwise distance.
#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Distance to evaluate. Series: cor, ccf, dtw, nmi, voi.
    /// Event series: es, vr.
    #[arg(long)]
    pub metric: Option<String>,

    /// cor/ccf: which correlation sign counts as proximity
    /// (abs, pos, neg). Default abs.
    #[arg(long)]
    pub mode: Option<String>,

    /// Significance gate: "fisher" (cor) or "surrogate" (es).
    /// Gated distances are binary: 0 = significant link, 1 = none.
    #[arg(long)]
    pub sig: Option<String>,

    /// Significance level for --sig. Default 0.05.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// ccf: largest lag to scan (in samples).
    #[arg(long)]
    pub tau_max: Option<usize>,

    /// nmi/voi: bin rule — sturges, scott, fd, or an explicit bin count.
    /// Default sturges.
    #[arg(long)]
    pub bins: Option<String>,

    /// nmi: normalization — half-sum, min, max, sqrt. Default half-sum.
    #[arg(long)]
    pub nmi_norm: Option<String>,

    /// es: coincidence window — a positive number, or "local" for half the
    /// smallest neighbouring inter-event gap.
    #[arg(long)]
    pub es_tau: Option<String>,

    /// es: upper cap applied to the local coincidence window.
    #[arg(long)]
    pub es_tau_cap: Option<f64>,

    /// es: sym (undirected synchronization) or asym (directional).
    /// Distance matrices accept sym only. Default sym.
    #[arg(long)]
    pub es_mode: Option<String>,

    /// vr: kernel shape — laplacian or gaussian. Default laplacian.
    #[arg(long)]
    pub vr_kernel: Option<String>,

    /// vr: kernel time constant (in samples).
    #[arg(long)]
    pub vr_tau: Option<f64>,

    /// Number of surrogate draws for --sig surrogate.
    #[arg(long)]
    pub surrogates: Option<usize>,

    /// RNG seed; required by every randomized step, with no default.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Options describing how event series enter a command.
#[derive(Debug, Args)]
pub struct EventArgs {
    /// Read the input as a 0/1 event-indicator table (one column per
    /// series) instead of raw values.
    #[arg(long)]
    pub events: bool,

    /// Extract events from raw series: the most extreme fraction of
    /// observations become events.
    #[arg(long)]
    pub events_percentile: Option<f64>,

    /// Which extreme marks an event: highest or lowest. Default highest.
    #[arg(long)]
    pub events_direction: Option<String>,
}

/// A fully-resolved distance choice.
#[derive(Debug)]
pub enum Metric {
    Series(SeriesMetric),
    Event {
        metric: EventMetric,
        /// When set, the distance is gated: 0 if the pair passes the
        /// surrogate test, 1 otherwise.
        surrogate: Option<SurrogateSpec>,
    },
}

fn parse_choice<T>(value: &str, what: &str, table: &[(&str, T)]) -> Result<T>
where
    T: Copy,
{
    for (name, v) in table {
        if *name == value {
            return Ok(*v);
        }
    }
    let options: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
    Err(Error::invalid(format!(
        "unknown {what} {value:?}; expected one of: {}",
        options.join(", ")
    )))
}

fn parse_mode(value: &str) -> Result<CorrelationMode> {
    parse_choice(
        value,
        "correlation mode",
        &[
            ("abs", CorrelationMode::Abs),
            ("pos", CorrelationMode::Pos),
            ("neg", CorrelationMode::Neg),
        ],
    )
}

fn parse_bins(value: &str) -> Result<BinRule> {
    match value {
        "sturges" => Ok(BinRule::Sturges),
        "scott" => Ok(BinRule::Scott),
        "fd" => Ok(BinRule::FreedmanDiaconis),
        other => match other.parse::<usize>() {
            Ok(n) => Ok(BinRule::Fixed(n)),
            Err(_) => Err(Error::invalid(format!(
                "unknown bin rule {other:?}; expected sturges, scott, fd, or a bin count"
            ))),
        },
    }
}

fn parse_nmi_norm(value: &str) -> Result<NmiNorm> {
    parse_choice(
        value,
        "NMI normalization",
        &[
            ("half-sum", NmiNorm::HalfSum),
            ("min", NmiNorm::Min),
            ("max", NmiNorm::Max),
            ("sqrt", NmiNorm::Sqrt),
        ],
    )
}

fn parse_es_tau(value: &str, cap: Option<f64>) -> Result<EsTau> {
    if value == "local" {
        return Ok(match cap {
            Some(c) => EsTau::LocalCapped(c),
            None => EsTau::Local,
        });
    }
    if cap.is_some() {
        return Err(Error::invalid(
            "--es-tau-cap only applies to --es-tau local",
        ));
    }
    match value.parse::<f64>() {
        Ok(t) => Ok(EsTau::Fixed(t)),
        Err(_) => Err(Error::invalid(format!(
            "invalid --es-tau {value:?}; expected a positive number or \"local\""
        ))),
    }
}

pub fn parse_direction(value: &str) -> Result<EventDirection> {
    parse_choice(
        value,
        "event direction",
        &[
            ("highest", EventDirection::Highest),
            ("lowest", EventDirection::Lowest),
        ],
    )
}

fn reject_sig(sig: Option<&str>, metric: &str) -> Result<()> {
    match sig {
        None => Ok(()),
        Some(s) => Err(Error::invalid(format!(
            "--sig {s} does not apply to metric {metric}"
        ))),
    }
}

/// Resolves the metric options (flags first, then config defaults) into a
/// typed distance.
pub fn resolve_metric(args: &MetricArgs, cfg: &Config) -> Result<Metric> {
    let name: String = cfg.required(args.metric.clone(), "metric")?;
    let mode = parse_mode(&cfg.or(args.mode.clone(), "mode", "abs".into())?)?;
    let sig: Option<String> = cfg.opt(args.sig.clone(), "sig")?;
    let alpha: f64 = cfg.or(args.alpha, "alpha", 0.05)?;
    let bins = parse_bins(&cfg.or(args.bins.clone(), "bins", "sturges".into())?)?;

    match name.as_str() {
        "cor" => {
            let fisher = match sig.as_deref() {
                None => None,
                Some("fisher") => Some(FisherSpec { alpha }),
                Some(other) => {
                    return Err(Error::invalid(format!(
                        "metric cor supports --sig fisher, not {other:?}"
                    )))
                }
            };
            Ok(Metric::Series(SeriesMetric::Cor { mode, fisher }))
        }
        "ccf" => {
            reject_sig(sig.as_deref(), "ccf")?;
            let tau_max = cfg.required(args.tau_max, "tau-max")?;
            Ok(Metric::Series(SeriesMetric::Ccf { tau_max, mode }))
        }
        "dtw" => {
            reject_sig(sig.as_deref(), "dtw")?;
            Ok(Metric::Series(SeriesMetric::Dtw))
        }
        "nmi" => {
            reject_sig(sig.as_deref(), "nmi")?;
            let norm =
                parse_nmi_norm(&cfg.or(args.nmi_norm.clone(), "nmi-norm", "half-sum".into())?)?;
            Ok(Metric::Series(SeriesMetric::Nmi { rule: bins, norm }))
        }
        "voi" => {
            reject_sig(sig.as_deref(), "voi")?;
            Ok(Metric::Series(SeriesMetric::Voi { rule: bins }))
        }
        "es" => {
            let tau_raw: String = cfg.required(args.es_tau.clone(), "es-tau")?;
            let cap = cfg.opt(args.es_tau_cap, "es-tau-cap")?;
            let tau = parse_es_tau(&tau_raw, cap)?;
            let es_mode = parse_choice(
                &cfg.or(args.es_mode.clone(), "es-mode", "sym".into())?,
                "event-sync mode",
                &[("sym", EsMode::Symmetric), ("asym", EsMode::Asymmetric)],
            )?;
            let surrogate = match sig.as_deref() {
                None => None,
                Some("surrogate") => Some(SurrogateSpec {
                    n_surrogates: cfg.required(args.surrogates, "surrogates")?,
                    alpha,
                    seed: cfg.required(args.seed, "seed")?,
                }),
                Some(other) => {
                    return Err(Error::invalid(format!(
                        "metric es supports --sig surrogate, not {other:?}"
                    )))
                }
            };
            Ok(Metric::Event {
                metric: EventMetric::Es(EsParams { tau, mode: es_mode }),
                surrogate,
            })
        }
        "vr" => {
            reject_sig(sig.as_deref(), "vr")?;
            let kernel = parse_choice(
                &cfg.or(args.vr_kernel.clone(), "vr-kernel", "laplacian".into())?,
                "kernel",
                &[
                    ("laplacian", VrKernel::Laplacian),
                    ("gaussian", VrKernel::Gaussian),
                ],
            )?;
            let tau = cfg.required(args.vr_tau, "vr-tau")?;
            Ok(Metric::Event {
                metric: EventMetric::Vr(VrParams { kernel, tau }),
                surrogate: None,
            })
        }
        other => Err(Error::invalid(format!(
            "unknown metric {other:?}; expected cor, ccf, dtw, nmi, voi, es, or vr"
        ))),
    }
}

/// Options selecting a network builder from a distance matrix.
#[derive(Debug, Args)]
pub struct BuilderArgs {
    /// How edges are derived from distances: knn, enn, weighted,
    /// or significant.
    #[arg(long)]
    pub builder: Option<String>,

    /// knn: neighbours per node.
    #[arg(long)]
    pub k: Option<usize>,

    /// enn: link pairs at distance <= eps.
    #[arg(long)]
    pub eps: Option<f64>,

    /// enn: derive eps as this quantile of the off-diagonal distances.
    #[arg(long)]
    pub eps_percentile: Option<f64>,
}

/// A builder choice whose epsilon may still need the matrix (percentile).
#[derive(Debug, Clone, Copy)]
pub enum BuilderChoice {
    Knn { k: usize },
    Enn { eps: f64 },
    EnnPercentile { p: f64 },
    Weighted,
    Significant,
}

impl BuilderChoice {
    /// Fixes the epsilon against a concrete matrix and returns the builder.
    pub fn realize(self, d: &tsgraph::DistanceMatrix) -> Result<NetBuilder> {
        Ok(match self {
            BuilderChoice::Knn { k } => NetBuilder::Knn { k },
            BuilderChoice::Enn { eps } => NetBuilder::Enn { eps },
            BuilderChoice::EnnPercentile { p } => NetBuilder::Enn {
                eps: tsgraph::matrix::dist_percentile(d, p)?,
            },
            BuilderChoice::Weighted => NetBuilder::Weighted,
            BuilderChoice::Significant => NetBuilder::Significant,
        })
    }
}

pub fn resolve_builder(
    args: &BuilderArgs,
    cfg: &Config,
    allow_significant: bool,
) -> Result<BuilderChoice> {
    let name: String = cfg.required(args.builder.clone(), "builder")?;
    match name.as_str() {
        "knn" => Ok(BuilderChoice::Knn {
            k: cfg.required(args.k, "k")?,
        }),
        "enn" => {
            let eps = cfg.opt(args.eps, "eps")?;
            let pct = cfg.opt(args.eps_percentile, "eps-percentile")?;
            match (eps, pct) {
                (Some(eps), None) => Ok(BuilderChoice::Enn { eps }),
                (None, Some(p)) => Ok(BuilderChoice::EnnPercentile { p }),
                (Some(_), Some(_)) => Err(Error::invalid(
                    "--eps and --eps-percentile are mutually exclusive",
                )),
                (None, None) => Err(Error::invalid(
                    "builder enn needs --eps or --eps-percentile",
                )),
            }
        }
        "weighted" => Ok(BuilderChoice::Weighted),
        "significant" => {
            if allow_significant {
                Ok(BuilderChoice::Significant)
            } else {
                Err(Error::invalid(
                    "builder significant expects a binary significance matrix; \
                     this command produces plain distances — use knn, enn, or weighted",
                ))
            }
        }
        other => Err(Error::invalid(format!(
            "unknown builder {other:?}; expected knn, enn, weighted, or significant"
        ))),
    }
}

/// Output format for networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetFormat {
    Edgelist,
    Graphml,
}

pub fn resolve_format(flag: Option<String>, cfg: &Config) -> Result<NetFormat> {
    let name = cfg.or(flag, "format", "edgelist".into())?;
    parse_choice(
        &name,
        "format",
        &[
            ("edgelist", NetFormat::Edgelist),
            ("graphml", NetFormat::Graphml),
        ],
    )
}

//! One function per subcommand. Every function is a pure mapping from
//! resolved options and input files to output files plus stdout text;
//! warnings go to stderr.

use std::path::{Path, PathBuf};

use tsgraph::analysis::{girvan_newman, graph_stats};
use tsgraph::dist::dist_es;
use tsgraph::generate::{dataset_sincos_generate, random_ets};
use tsgraph::graphio::{export_edgelist, export_graphml, import_edgelist};
use tsgraph::net::{net_significant, significance_from_binary_distance, Network};
use tsgraph::single::{tsnet_qn, tsnet_rn, tsnet_vg, tsnet_windows, EmbeddingSpec};
use tsgraph::{
    dist_parts_merge, events_from_ts, io, ts_dist, ts_dist_part, ts_dist_part_file, Error,
    EventSeries, Result, TimeSeries,
};

use crate::config::Config;
use crate::params::{
    parse_direction, resolve_metric, EventArgs, Metric, MetricArgs, NetFormat,
};
use crate::report;

/// Loads raw series from a wide CSV file or a directory of one-series files.
pub fn load_series(input: &Path) -> Result<Vec<TimeSeries>> {
    if input.is_dir() {
        io::read_series_dir(input)
    } else {
        io::read_series_csv(input)
    }
}

/// Loads event series, either directly from a 0/1 indicator table or by
/// extracting threshold exceedances from raw series.
pub fn load_events(input: &Path, ev: &EventArgs, cfg: &Config) -> Result<Vec<EventSeries>> {
    if ev.events {
        if input.is_dir() {
            return Err(Error::invalid(
                "--events expects a single 0/1 indicator CSV, not a directory",
            ));
        }
        return io::read_events_csv(input);
    }
    let Some(percentile) = cfg.opt(ev.events_percentile, "events-percentile")? else {
        return Err(Error::invalid(
            "event metrics need --events (0/1 indicator input) or \
             --events-percentile (extraction from raw series)",
        ));
    };
    let direction = parse_direction(&cfg.or(
        ev.events_direction.clone(),
        "events-direction",
        "highest".into(),
    )?)?;
    let series = load_series(input)?;
    series
        .iter()
        .map(|s| events_from_ts(s, percentile, direction))
        .collect()
}

/// Distance of one event pair under an optional surrogate gate: gated
/// distances are binary (0 = significant link, 1 = none).
fn event_pair_distance(
    metric: &tsgraph::dist::EventMetric,
    surrogate: Option<&tsgraph::dist::SurrogateSpec>,
    x: &EventSeries,
    y: &EventSeries,
) -> Result<f64> {
    match (metric, surrogate) {
        (tsgraph::dist::EventMetric::Es(params), Some(spec)) => {
            let outcome = dist_es(x, y, params, Some(spec))?;
            let significant = outcome
                .surrogate
                .expect("surrogate outcome requested")
                .significant;
            Ok(if significant { 0.0 } else { 1.0 })
        }
        (_, Some(_)) => Err(Error::invalid(
            "--sig surrogate only applies to metric es",
        )),
        (m, None) => m.eval(x, y),
    }
}

pub fn cmd_dist(
    input: &Path,
    margs: &MetricArgs,
    eargs: &EventArgs,
    out: Option<PathBuf>,
    cfg: &Config,
    workers: usize,
) -> Result<()> {
    let metric = resolve_metric(margs, cfg)?;
    let out = require_out(out, cfg)?;
    let d = match &metric {
        Metric::Series(m) => {
            let series = load_series(input)?;
            ts_dist(&series, |x, y| m.eval(x, y), workers)?
        }
        Metric::Event {
            metric: m,
            surrogate,
        } => {
            if !m.is_symmetric() {
                return Err(Error::AsymmetricKernel);
            }
            let events = load_events(input, eargs, cfg)?;
            ts_dist(
                &events,
                |x, y| event_pair_distance(m, surrogate.as_ref(), x, y),
                workers,
            )?
        }
    };
    io::write_matrix_csv(&out, &d)
}

pub fn cmd_dist_part(
    input: &Path,
    margs: &MetricArgs,
    eargs: &EventArgs,
    part: usize,
    of: usize,
    out_dir: Option<PathBuf>,
    cfg: &Config,
) -> Result<()> {
    let metric = resolve_metric(margs, cfg)?;
    let out_dir = require_out(out_dir, cfg)?;
    let part_data = match &metric {
        Metric::Series(m) => {
            if input.is_dir() {
                // Streaming: at most two series in memory at a time.
                ts_dist_part_file(input, |x, y| m.eval(x, y), part, of)?
            } else {
                let series = load_series(input)?;
                ts_dist_part(&series, |x, y| m.eval(x, y), part, of)?
            }
        }
        Metric::Event {
            metric: m,
            surrogate,
        } => {
            if !m.is_symmetric() {
                return Err(Error::AsymmetricKernel);
            }
            let events = load_events(input, eargs, cfg)?;
            ts_dist_part(
                &events,
                |x, y| event_pair_distance(m, surrogate.as_ref(), x, y),
                part,
                of,
            )?
        }
    };
    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    io::write_part_csv(&out_dir, &part_data)?;
    Ok(())
}

/// Labels for a merge: from the original input (file header or directory
/// stems) or synthesized as "1".."n".
fn merge_labels(input: Option<&Path>, n: Option<usize>) -> Result<Vec<String>> {
    match (input, n) {
        (Some(path), None) => {
            if path.is_dir() {
                Ok(io::list_series_dir(path)?
                    .into_iter()
                    .map(|(id, _)| id)
                    .collect())
            } else {
                Ok(io::read_series_csv(path)?
                    .into_iter()
                    .map(|s| s.id().to_string())
                    .collect())
            }
        }
        (None, Some(n)) => Ok((1..=n).map(|i| i.to_string()).collect()),
        (Some(_), Some(_)) => Err(Error::invalid("--input and --n are mutually exclusive")),
        (None, None) => Err(Error::invalid(
            "merge needs the series labels: --input (original input) or --n (count)",
        )),
    }
}

pub fn cmd_merge(
    parts_dir: &Path,
    input: Option<PathBuf>,
    n: Option<usize>,
    out: Option<PathBuf>,
    cfg: &Config,
) -> Result<()> {
    let n = cfg.opt(n, "n")?;
    let out = require_out(out, cfg)?;
    let labels = merge_labels(input.as_deref(), n)?;
    let parts = io::read_parts_dir(parts_dir)?;
    let d = dist_parts_merge(&parts, labels)?;
    io::write_matrix_csv(&out, &d)
}

pub fn write_network(net: &Network, out: &Path, format: NetFormat) -> Result<()> {
    match format {
        NetFormat::Edgelist => export_edgelist(net, out),
        NetFormat::Graphml => export_graphml(net, out),
    }
}

pub fn require_out(out: Option<PathBuf>, _cfg: &Config) -> Result<PathBuf> {
    out.ok_or_else(|| Error::invalid("missing required option --out"))
}

pub fn cmd_net(
    matrix_path: &Path,
    bargs: &crate::params::BuilderArgs,
    normalize: bool,
    out: Option<PathBuf>,
    format: Option<String>,
    cfg: &Config,
) -> Result<()> {
    let choice = crate::params::resolve_builder(bargs, cfg, true)?;
    let format = crate::params::resolve_format(format, cfg)?;
    let out = require_out(out, cfg)?;
    let mut d = io::read_matrix_csv(matrix_path)?;
    if normalize {
        let (normalized, degenerate) = d.normalize();
        if degenerate {
            eprintln!(
                "warning: all off-diagonal distances are equal; \
                 normalization mapped them to 0"
            );
        }
        d = normalized;
    }
    let net = match choice {
        crate::params::BuilderChoice::Significant => {
            let s = significance_from_binary_distance(&d)?;
            net_significant(&s)?
        }
        other => {
            let builder = other.realize(&d)?;
            builder.build(&d).map_err(|e| match (&e, normalize) {
                // Point at the flag that fixes an unnormalized weighted build.
                (Error::InvalidArgument(msg), false) if msg.contains("normaliz") => {
                    Error::invalid(format!("{msg} (rerun with --normalize)"))
                }
                _ => e,
            })?
        }
    };
    write_network(&net, &out, format)
}

/// Reads the one series a single-series command operates on.
pub fn load_one_series(input: &Path) -> Result<TimeSeries> {
    let mut series = load_series(input)?;
    if series.len() != 1 {
        return Err(Error::invalid(format!(
            "this command takes exactly one series, but {} holds {}",
            input.display(),
            series.len()
        )));
    }
    Ok(series.pop().expect("length checked"))
}

pub struct SingleOut {
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl SingleOut {
    fn write(&self, net: &Network, cfg: &Config) -> Result<()> {
        let format = crate::params::resolve_format(self.format.clone(), cfg)?;
        let out = require_out(self.out.clone(), cfg)?;
        write_network(net, &out, format)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_single_vg(
    input: &Path,
    kind: Option<String>,
    directed: bool,
    limit: Option<usize>,
    algorithm: Option<String>,
    sout: &SingleOut,
    cfg: &Config,
    workers: usize,
) -> Result<()> {
    use tsgraph::single::{VgAlgorithm, VgKind};
    let kind = match cfg.or(kind, "kind", "natural".into())?.as_str() {
        "natural" => VgKind::Natural,
        "horizontal" => VgKind::Horizontal,
        other => {
            return Err(Error::invalid(format!(
                "unknown visibility kind {other:?}; expected natural or horizontal"
            )))
        }
    };
    let algorithm = match cfg
        .or(algorithm, "vg-algorithm", "divide-conquer".into())?
        .as_str()
    {
        "naive" => VgAlgorithm::Naive,
        "divide-conquer" => VgAlgorithm::DivideConquer,
        other => {
            return Err(Error::invalid(format!(
                "unknown algorithm {other:?}; expected naive or divide-conquer"
            )))
        }
    };
    let limit = cfg.opt(limit, "limit")?;
    let series = load_one_series(input)?;
    let net = tsnet_vg(&series, kind, directed, limit, algorithm, workers)?;
    sout.write(&net, cfg)
}

pub fn cmd_single_qn(
    input: &Path,
    breaks: Option<usize>,
    sout: &SingleOut,
    cfg: &Config,
) -> Result<()> {
    let breaks = cfg.required(breaks, "breaks")?;
    let series = load_one_series(input)?;
    let (net, degenerate) = tsnet_qn(&series, breaks)?;
    if degenerate {
        eprintln!("warning: constant series; the transition network is a single node");
    }
    sout.write(&net, cfg)
}

pub fn cmd_single_rn(
    input: &Path,
    m: Option<usize>,
    delay: Option<usize>,
    radius: Option<f64>,
    space: Option<String>,
    sout: &SingleOut,
    cfg: &Config,
) -> Result<()> {
    use tsgraph::single::EmbedMetric;
    let metric = match cfg.or(space, "space", "euclidean".into())?.as_str() {
        "euclidean" => EmbedMetric::Euclidean,
        "manhattan" => EmbedMetric::Manhattan,
        "chebyshev" => EmbedMetric::Chebyshev,
        other => {
            return Err(Error::invalid(format!(
                "unknown state-space metric {other:?}; \
                 expected euclidean, manhattan, or chebyshev"
            )))
        }
    };
    let spec = EmbeddingSpec {
        m: cfg.required(m, "m")?,
        tau_embed: cfg.required(delay, "delay")?,
        metric,
        radius: cfg.required(radius, "radius")?,
    };
    let series = load_one_series(input)?;
    let net = tsnet_rn(&series, &spec)?;
    sout.write(&net, cfg)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_single_windows(
    input: &Path,
    width: Option<usize>,
    by: Option<usize>,
    margs: &MetricArgs,
    bargs: &crate::params::BuilderArgs,
    sout: &SingleOut,
    cfg: &Config,
    workers: usize,
) -> Result<()> {
    let width = cfg.required(width, "width")?;
    let by = cfg.or(by, "by", 1)?;
    let metric = match resolve_metric(margs, cfg)? {
        Metric::Series(m) => m,
        Metric::Event { .. } => {
            return Err(Error::invalid(
                "windows of one series are plain series; use a series metric \
                 (cor, ccf, dtw, nmi, voi)",
            ))
        }
    };
    let choice = crate::params::resolve_builder(bargs, cfg, false)?;
    let series = load_one_series(input)?;
    let net = match choice {
        crate::params::BuilderChoice::EnnPercentile { p } => {
            // The percentile needs the window distances; compute them once.
            let windows = tsgraph::ts_to_windows(&series, width, by)?;
            if windows.len() == 1 {
                tsnet_windows(
                    &series,
                    width,
                    by,
                    &metric,
                    &tsgraph::net::NetBuilder::Weighted,
                    workers,
                )?
            } else {
                let d = ts_dist(windows.windows(), |x, y| metric.eval(x, y), workers)?;
                let eps = tsgraph::matrix::dist_percentile(&d, p)?;
                tsgraph::net::NetBuilder::Enn { eps }.build(&d)?
            }
        }
        other => {
            let builder = fixed_builder(other)?;
            tsnet_windows(&series, width, by, &metric, &builder, workers)?
        }
    };
    sout.write(&net, cfg)
}

fn fixed_builder(choice: crate::params::BuilderChoice) -> Result<tsgraph::net::NetBuilder> {
    use crate::params::BuilderChoice;
    use tsgraph::net::NetBuilder;
    Ok(match choice {
        BuilderChoice::Knn { k } => NetBuilder::Knn { k },
        BuilderChoice::Enn { eps } => NetBuilder::Enn { eps },
        BuilderChoice::Weighted => NetBuilder::Weighted,
        BuilderChoice::Significant | BuilderChoice::EnnPercentile { .. } => {
            unreachable!("filtered by the caller")
        }
    })
}

/// Prints a report to stdout. A closed pipe (e.g. `| head`) is not an
/// error: the consumer simply stopped reading.
fn print_report(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Error::io("stdout", e)),
    }
}

pub fn cmd_stats(network: &Path, directed: bool, json: bool) -> Result<()> {
    let net = import_edgelist(network, directed)?;
    let stats = graph_stats(&net);
    print_report(&report::render_stats(&stats, json))
}

pub fn cmd_communities(network: &Path, json: bool) -> Result<()> {
    let net = import_edgelist(network, false)?;
    let partition = girvan_newman(&net)?;
    print_report(&report::render_communities(&net, &partition, json))
}

pub fn cmd_generate_sincos(
    each: Option<usize>,
    length: Option<usize>,
    noise: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    cfg: &Config,
) -> Result<()> {
    let each = cfg.required(each, "each")?;
    let length = cfg.required(length, "length")?;
    let noise = cfg.required(noise, "noise")?;
    let seed = cfg.required(seed, "seed")?;
    let out = require_out(out, cfg)?;
    let series = dataset_sincos_generate(each, length, noise, seed)?;
    io::write_series_csv(&out, &series)
}

pub fn cmd_generate_events(
    horizon: Option<usize>,
    n: Option<usize>,
    seed: Option<u64>,
    count: Option<usize>,
    id: Option<String>,
    out: Option<PathBuf>,
    cfg: &Config,
) -> Result<()> {
    let horizon = cfg.required(horizon, "horizon")?;
    let n = cfg.required(n, "n")?;
    let seed = cfg.required(seed, "seed")?;
    let count = cfg.or(count, "count", 1)?;
    let id = cfg.or(id, "id", "events".into())?;
    let out = require_out(out, cfg)?;
    if count == 0 {
        return Err(Error::invalid("--count must be at least 1"));
    }
    let events = if count == 1 {
        vec![random_ets(id, horizon, n, seed)?]
    } else {
        (0..count)
            .map(|i| random_ets(format!("{id}_{}", i + 1), horizon, n, seed + i as u64))
            .collect::<Result<Vec<_>>>()?
    };
    io::write_events_csv(&out, &events)
}

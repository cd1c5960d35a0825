//! End-to-end library pipelines across module boundaries, including the
//! file-backed partition workflow meant for batch job arrays.

use std::fs;

use tsgraph::analysis::{girvan_newman, graph_stats};
use tsgraph::dist::{
    dist_es, CorrelationMode, EsMode, EsParams, EsTau, SeriesMetric, SurrogateSpec,
};
use tsgraph::generate::{dataset_sincos_generate, random_ets};
use tsgraph::graphio::{export_edgelist, import_edgelist};
use tsgraph::io;
use tsgraph::matrix::dist_percentile;
use tsgraph::net::{net_enn, net_knn, NetBuilder};
use tsgraph::single::{tsnet_qn, tsnet_windows};
use tsgraph::{
    dist_parts_merge, event_dist, events_from_ts, ts_dist, ts_dist_part, ts_dist_part_file,
    EventDirection, EventSeries, TimeSeries,
};

#[test]
fn file_backed_partition_workflow_matches_single_shot() {
    let dir = tempfile::tempdir().unwrap();
    let series_dir = dir.path().join("series");
    let parts_dir = dir.path().join("parts");
    fs::create_dir_all(&series_dir).unwrap();
    fs::create_dir_all(&parts_dir).unwrap();

    let series = dataset_sincos_generate(5, 80, 0.2, 31).unwrap();
    for s in &series {
        io::write_series_csv(&series_dir.join(format!("{}.csv", s.id())), std::slice::from_ref(s)).unwrap();
    }

    // each "job" computes one slice straight from the files
    let total_parts = 4;
    for part in 1..=total_parts {
        let slice = ts_dist_part_file(
            &series_dir,
            |a, b| SeriesMetric::Dtw.eval(a, b),
            part,
            total_parts,
        )
        .unwrap();
        io::write_part_csv(&parts_dir, &slice).unwrap();
    }

    // the merge job reassembles them
    let loaded = io::read_series_dir(&series_dir).unwrap();
    let labels: Vec<String> = loaded.iter().map(|s| s.id().to_string()).collect();
    let parts = io::read_parts_dir(&parts_dir).unwrap();
    let merged = dist_parts_merge(&parts, labels).unwrap();

    let direct = ts_dist(&loaded, |a, b| SeriesMetric::Dtw.eval(a, b), 2).unwrap();
    assert_eq!(merged, direct);

    // and the merged matrix serializes byte-identically to the direct one
    let m1 = dir.path().join("merged.csv");
    let m2 = dir.path().join("direct.csv");
    io::write_matrix_csv(&m1, &merged).unwrap();
    io::write_matrix_csv(&m2, &direct).unwrap();
    assert_eq!(fs::read(&m1).unwrap(), fs::read(&m2).unwrap());

    // the directory ordering must match the ids the generator produced,
    // sorted by filename
    let mut expected = series.iter().map(|s| s.id().to_string()).collect::<Vec<_>>();
    expected.sort();
    assert_eq!(merged.labels(), expected.as_slice());
}

#[test]
fn in_memory_parts_agree_with_file_parts() {
    let dir = tempfile::tempdir().unwrap();
    let series_dir = dir.path().join("series");
    fs::create_dir_all(&series_dir).unwrap();
    let series = dataset_sincos_generate(3, 40, 0.1, 8).unwrap();
    for s in &series {
        io::write_series_csv(&series_dir.join(format!("{}.csv", s.id())), std::slice::from_ref(s)).unwrap();
    }
    let loaded = io::read_series_dir(&series_dir).unwrap();
    let metric = SeriesMetric::Cor { mode: CorrelationMode::Abs, fisher: None };
    for part in 1..=3 {
        let mem = ts_dist_part(&loaded, |a, b| metric.eval(a, b), part, 3).unwrap();
        let file = ts_dist_part_file(&series_dir, |a, b| metric.eval(a, b), part, 3).unwrap();
        assert_eq!(mem, file);
    }
}

#[test]
fn event_extraction_to_network_pipeline() {
    // two phase-aligned sines share extreme positions; the phase-shifted
    // cosines share theirs; extremes of sin and cos interleave.
    let series = dataset_sincos_generate(2, 120, 0.05, 5).unwrap();
    let events: Vec<EventSeries> = series
        .iter()
        .map(|s| events_from_ts(s, 0.2, EventDirection::Highest).unwrap())
        .collect();
    assert_eq!(events.len(), 4);
    assert!(events.iter().all(|e| e.count() == 24), "ceil(0.2 * 120)");

    let metric = tsgraph::dist::EventMetric::Es(EsParams {
        tau: EsTau::Fixed(2.0),
        mode: EsMode::Symmetric,
    });
    let d = event_dist(&events, &metric, 2).unwrap();
    let net = net_knn(&d, 1).unwrap();
    // nearest neighbor of each sine is the other sine, same for cosines
    assert!(net.has_edge(0, 1), "sin_1 - sin_2");
    assert!(net.has_edge(2, 3), "cos_1 - cos_2");
    assert!(!net.has_edge(0, 2) && !net.has_edge(1, 3), "phases don't mix");
}

#[test]
fn surrogate_gate_is_reproducible_and_discriminates() {
    let x = random_ets("x", 400, 30, 17).unwrap();
    // y: every x event echoed one step later -> strongly synchronized
    let times: Vec<usize> = x.times().iter().map(|&t| t + 1).collect();
    let y = EventSeries::new("y", 401, times).unwrap();
    // z: unrelated events
    let z = random_ets("z", 401, 30, 2024).unwrap();

    let params = EsParams { tau: EsTau::Fixed(2.0), mode: EsMode::Symmetric };
    let spec = SurrogateSpec { n_surrogates: 200, alpha: 0.05, seed: 99 };

    let synced = dist_es(&x, &y, &params, Some(&spec)).unwrap();
    let synced2 = dist_es(&x, &y, &params, Some(&spec)).unwrap();
    assert_eq!(synced, synced2, "same seed, same bits");
    assert!(synced.surrogate.as_ref().unwrap().significant);

    let indep = dist_es(&x, &z, &params, Some(&spec)).unwrap();
    assert!(!indep.surrogate.as_ref().unwrap().significant);
}

#[test]
fn windowed_series_network_exports_and_reimports() {
    // period-6 sawtooth, windows of one period pair up by phase
    let values: Vec<f64> = (0..36).map(|k| (k % 6) as f64 + 0.1 * (k as f64)).collect();
    let series = TimeSeries::new("saw", values).unwrap();
    let metric = SeriesMetric::Cor { mode: CorrelationMode::Pos, fisher: None };
    let builder = NetBuilder::Enn { eps: 0.05 };
    let net = tsnet_windows(&series, 6, 6, &metric, &builder, 1).unwrap();
    assert_eq!(net.n(), 6);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("windows.tsv");
    export_edgelist(&net, &path).unwrap();
    let back = import_edgelist(&path, false).unwrap();
    let stats = graph_stats(&back);
    assert_eq!(stats.m, net.edge_count());
}

#[test]
fn correlation_communities_recover_generator_families() {
    let series = dataset_sincos_generate(4, 100, 0.1, 1).unwrap();
    let metric = SeriesMetric::Cor { mode: CorrelationMode::Abs, fisher: None };
    let d = ts_dist(&series, |a, b| metric.eval(a, b), 4).unwrap();
    let eps = dist_percentile(&d, 0.4).unwrap();
    let net = net_enn(&d, eps).unwrap();
    let partition = girvan_newman(&net).unwrap();
    assert_eq!(partition.group_count(), 2);
    // generator order: 4 sines then 4 cosines
    assert_eq!(partition.assignment, vec![0, 0, 0, 0, 1, 1, 1, 1]);
}

#[test]
fn transition_network_round_trips_with_probabilities() {
    let values: Vec<f64> = (0..200)
        .map(|k| (2.0 * std::f64::consts::PI * k as f64 / 20.0).sin())
        .collect();
    let series = TimeSeries::new("wave", values).unwrap();
    let (net, degenerate) = tsnet_qn(&series, 10).unwrap();
    assert!(!degenerate);
    let total: f64 = net.edges().map(|(_, _, w)| w.unwrap()).sum();
    assert_eq!(total, 199.0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qn.tsv");
    export_edgelist(&net, &path).unwrap();
    let back = import_edgelist(&path, true).unwrap();
    assert_eq!(back.edge_count(), net.edge_count());
    let p = back.out_probabilities().unwrap();
    assert!(p.values().all(|&v| (0.0..=1.0).contains(&v)));
}

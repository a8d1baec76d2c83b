//! Hotspot network construction: transition counting, frequency-threshold
//! tree tracing, frontier expansion, and the transition matrix.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::TransitionMatrix;
use crate::model::{GraphBuilder, HotspotGraph, VisitSequence};

/// Counts hotspot-to-hotspot transitions over all sequences: every
/// consecutive pair of distinct visits adds one to its directed edge.
/// When `app_filter` is given, only visits with that app label take part
/// (both in edges and in vertex frequencies).
pub fn transition_graph(seqs: &[VisitSequence], app_filter: Option<&str>) -> HotspotGraph {
    let mut b = GraphBuilder::new();
    for seq in seqs {
        let visits: Vec<&str> = seq
            .visits()
            .iter()
            .filter(|v| app_filter.is_none_or(|app| v.app_label == app))
            .map(|v| v.poi_id.as_str())
            .collect();
        for poi in &visits {
            b.add_to_frequency(poi, 1.0);
        }
        for pair in visits.windows(2) {
            if pair[0] != pair[1] {
                b.add_edge(pair[0], pair[1], 1.0).expect("unit weight");
            }
        }
    }
    b.build()
}

/// The seed plus its distance-one neighbors (in either direction) whose
/// frequency meets the threshold.
pub fn trace_tree(g: &HotspotGraph, seed: &str, threshold: f64) -> Result<BTreeSet<String>> {
    let idx = g
        .index_of(seed)
        .ok_or_else(|| Error::UnknownVertex(seed.into()))?;
    if g.frequency_at(idx) < threshold {
        return Err(Error::Validation(format!(
            "seed {seed} has frequency {} below threshold {threshold}",
            g.frequency_at(idx)
        )));
    }
    let mut kept: BTreeSet<String> = BTreeSet::new();
    kept.insert(seed.into());
    for n in g.undirected_neighbors_at(idx) {
        if n != idx && g.frequency_at(n) >= threshold {
            kept.insert(g.id_at(n).into());
        }
    }
    Ok(kept)
}

/// Frontier expansion from the seeds: repeatedly admits every distance-one
/// neighbor meeting the frequency threshold until nothing new is added,
/// then returns the subgraph induced by the retained vertices.
pub fn build_hotspot_network(
    g: &HotspotGraph,
    seeds: &[String],
    threshold: f64,
) -> Result<HotspotGraph> {
    if seeds.is_empty() {
        return Err(Error::Validation("seed list is empty".into()));
    }
    let mut retained: BTreeSet<String> = BTreeSet::new();
    let mut frontier: Vec<u32> = Vec::new();
    for seed in seeds {
        let idx = g
            .index_of(seed)
            .ok_or_else(|| Error::UnknownVertex(seed.clone()))?;
        if g.frequency_at(idx) < threshold {
            return Err(Error::Validation(format!(
                "seed {seed} has frequency {} below threshold {threshold}",
                g.frequency_at(idx)
            )));
        }
        if retained.insert(seed.clone()) {
            frontier.push(idx);
        }
    }
    while let Some(v) = frontier.pop() {
        for n in g.undirected_neighbors_at(v) {
            if g.frequency_at(n) >= threshold && retained.insert(g.id_at(n).into()) {
                frontier.push(n);
            }
        }
    }
    Ok(g.induced(&retained))
}

/// All vertices whose frequency meets the threshold — the default seed set
/// when no explicit seeds are given.
pub fn default_seeds(g: &HotspotGraph, threshold: f64) -> Vec<String> {
    g.vertices()
        .filter(|(_, f)| *f >= threshold)
        .map(|(id, _)| id.into())
        .collect()
}

/// Frequency at the given percentile (nearest-rank over the sorted vertex
/// frequencies). `pct` is in `[0, 100]`.
pub fn frequency_percentile(g: &HotspotGraph, pct: f64) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::Validation(
            "cannot take a percentile of an empty graph".into(),
        ));
    }
    if !(0.0..=100.0).contains(&pct) {
        return Err(Error::Validation(format!(
            "percentile must be in [0, 100], got {pct}"
        )));
    }
    let mut freqs: Vec<f64> = g.vertices().map(|(_, f)| f).collect();
    freqs.sort_unstable_by(|a, b| a.partial_cmp(b).expect("frequencies are finite"));
    let n = freqs.len();
    let rank = libm::ceil(pct / 100.0 * n as f64) as usize;
    Ok(freqs[rank.clamp(1, n) - 1])
}

/// Column-stochastic transition matrix of the graph: entry `(j, i)` is
/// `weight(i -> j) / out_weight(i)`, with all-zero columns for sinks.
pub fn build_transition_matrix(g: &HotspotGraph) -> TransitionMatrix {
    TransitionMatrix::from_graph(g)
}

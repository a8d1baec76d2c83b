//! Shared domain types: trail records, POIs, visit sequences, and the
//! directed weighted hotspot graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A WGS84 coordinate. Both components are validated to be finite and in
/// range at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    lat: f64,
    lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        if !lat.is_finite() || !(-90.0..=90.0).contains(&lat) {
            return Err(Error::Validation(format!("latitude out of range: {lat}")));
        }
        if !lon.is_finite() || !(-180.0..=180.0).contains(&lon) {
            return Err(Error::Validation(format!("longitude out of range: {lon}")));
        }
        Ok(GeoPoint { lat, lon })
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }
}

/// One sample of a trail: where, when, and which app was active.
#[derive(Debug, Clone, PartialEq)]
pub struct TrailPoint {
    pub position: GeoPoint,
    /// Milliseconds since the Unix epoch.
    pub timestamp_ms: u64,
    /// Opaque app tag; may be empty.
    pub app_label: String,
}

/// One user's ordered, app-labeled location sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Metatrail {
    trail_id: String,
    points: Vec<TrailPoint>,
}

impl Metatrail {
    /// Points must be nonempty and sorted by timestamp.
    pub fn new(trail_id: String, points: Vec<TrailPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation(format!("trail {trail_id} has no points")));
        }
        if points.windows(2).any(|w| w[0].timestamp_ms > w[1].timestamp_ms) {
            return Err(Error::Validation(format!(
                "trail {trail_id} timestamps are not nondecreasing"
            )));
        }
        Ok(Metatrail { trail_id, points })
    }

    pub fn trail_id(&self) -> &str {
        &self.trail_id
    }

    pub fn points(&self) -> &[TrailPoint] {
        &self.points
    }
}

/// A point of interest from a catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct Poi {
    pub poi_id: String,
    pub name: String,
    pub position: GeoPoint,
}

/// A stay at one POI: the collapsed form of a run of snapped trail points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visit {
    pub poi_id: String,
    pub enter_ms: u64,
    pub exit_ms: u64,
    pub app_label: String,
}

/// The snapped form of a [`Metatrail`]: an ordered sequence of visits with
/// no two consecutive visits at the same POI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitSequence {
    trail_id: String,
    visits: Vec<Visit>,
}

impl VisitSequence {
    pub fn new(trail_id: String, visits: Vec<Visit>) -> Result<Self> {
        for v in &visits {
            if v.enter_ms > v.exit_ms {
                return Err(Error::Validation(format!(
                    "trail {trail_id}: visit at {} exits before it enters",
                    v.poi_id
                )));
            }
        }
        if visits.windows(2).any(|w| w[0].poi_id == w[1].poi_id) {
            return Err(Error::Validation(format!(
                "trail {trail_id}: consecutive visits at the same POI"
            )));
        }
        if visits.windows(2).any(|w| w[0].enter_ms > w[1].enter_ms) {
            return Err(Error::Validation(format!(
                "trail {trail_id}: visits out of chronological order"
            )));
        }
        Ok(VisitSequence { trail_id, visits })
    }

    pub fn trail_id(&self) -> &str {
        &self.trail_id
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }
}

/// Directed weighted graph of POIs.
///
/// Vertices carry a visit frequency; edges carry a traversal weight.
/// Weights are real-valued so that counted transition graphs and randomly
/// synthesized graphs share one representation. Vertex ids are sorted, so
/// iteration over vertices and edges is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct HotspotGraph {
    ids: Vec<String>,
    index: BTreeMap<String, u32>,
    freq: Vec<f64>,
    out: Vec<Vec<(u32, f64)>>,
    inc: Vec<Vec<(u32, f64)>>,
    edge_count: usize,
}

impl HotspotGraph {
    pub fn empty() -> Self {
        HotspotGraph {
            ids: Vec::new(),
            index: BTreeMap::new(),
            freq: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            edge_count: 0,
        }
    }

    /// Builds a graph from `(src, dst, weight)` triples. The vertex set is
    /// the union of the endpoints; duplicate `(src, dst)` pairs have their
    /// weights summed. Vertex frequencies are initialized to zero.
    pub fn from_edge_list<S: AsRef<str>>(edges: &[(S, S, f64)]) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (src, dst, w) in edges {
            b.add_edge(src.as_ref(), dst.as_ref(), *w)?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in lexicographic order.
    pub fn vertex_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub(crate) fn index_of(&self, id: &str) -> Option<u32> {
        self.index.get(id).copied()
    }

    pub(crate) fn id_at(&self, idx: u32) -> &str {
        &self.ids[idx as usize]
    }

    fn require(&self, id: &str) -> Result<u32> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.into()))
    }

    /// Visit frequency attached to a vertex.
    pub fn frequency(&self, id: &str) -> Result<f64> {
        Ok(self.freq[self.require(id)? as usize])
    }

    pub(crate) fn frequency_at(&self, idx: u32) -> f64 {
        self.freq[idx as usize]
    }

    /// Sum of weights of edges leaving `id`.
    pub fn out_weight(&self, id: &str) -> Result<f64> {
        Ok(self.out_weight_at(self.require(id)?))
    }

    /// Sum of weights of edges entering `id`.
    pub fn in_weight(&self, id: &str) -> Result<f64> {
        Ok(self.in_weight_at(self.require(id)?))
    }

    pub(crate) fn out_weight_at(&self, idx: u32) -> f64 {
        self.out[idx as usize].iter().map(|(_, w)| w).sum()
    }

    pub(crate) fn in_weight_at(&self, idx: u32) -> f64 {
        self.inc[idx as usize].iter().map(|(_, w)| w).sum()
    }

    /// Weight of the edge `src -> dst`, if present.
    pub fn edge_weight(&self, src: &str, dst: &str) -> Option<f64> {
        let s = self.index_of(src)?;
        let d = self.index_of(dst)?;
        let col = &self.out[s as usize];
        col.binary_search_by_key(&d, |(t, _)| *t)
            .ok()
            .map(|i| col[i].1)
    }

    pub(crate) fn out_edges_at(&self, idx: u32) -> &[(u32, f64)] {
        &self.out[idx as usize]
    }

    /// All edges as `(src, dst, weight)`, sorted by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, f64)> + '_ {
        self.ids.iter().enumerate().flat_map(move |(s, src)| {
            self.out[s]
                .iter()
                .map(move |(d, w)| (src.as_str(), self.ids[*d as usize].as_str(), *w))
        })
    }

    /// Vertices with their frequencies, in id order.
    pub fn vertices(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.ids.iter().zip(self.freq.iter()).map(|(id, f)| (id.as_str(), *f))
    }

    /// Total weight over all edges.
    pub fn total_weight(&self) -> f64 {
        self.out.iter().flatten().map(|(_, w)| w).sum()
    }

    /// Distance-one neighbors in either direction, deduplicated, by index.
    pub(crate) fn undirected_neighbors_at(&self, idx: u32) -> Vec<u32> {
        let outs = self.out[idx as usize].iter().map(|(t, _)| *t);
        let ins = self.inc[idx as usize].iter().map(|(s, _)| *s);
        let mut all: Vec<u32> = outs.chain(ins).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Subgraph induced by `members`: vertices in the set, edges with both
    /// endpoints in the set, frequencies preserved.
    pub fn induced(&self, members: &BTreeSet<String>) -> HotspotGraph {
        let mut b = GraphBuilder::new();
        for id in members {
            if let Some(idx) = self.index_of(id) {
                b.set_frequency(id, self.freq[idx as usize]);
            }
        }
        for (src, dst, w) in self.edges() {
            if members.contains(src) && members.contains(dst) {
                b.add_edge(src, dst, w).expect("weights already validated");
            }
        }
        b.build()
    }

    /// Copy of the graph with `weight` added to every vertex's self-loop.
    /// A zero weight returns the graph unchanged.
    pub(crate) fn with_self_loops(&self, weight: f64) -> HotspotGraph {
        if weight == 0.0 {
            return self.clone();
        }
        let mut b = GraphBuilder::new();
        for (id, f) in self.vertices() {
            b.set_frequency(id, f);
        }
        for (src, dst, w) in self.edges() {
            b.add_edge(src, dst, w).expect("weights already validated");
        }
        for id in &self.ids {
            b.add_edge(id, id, weight).expect("positive self-loop");
        }
        b.build()
    }
}

/// Accumulates vertices and edges, then freezes them into a sorted
/// [`HotspotGraph`]. Duplicate edges are merged by summing weights.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    freq: BTreeMap<String, f64>,
    edges: BTreeMap<(String, String), f64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Ensures a vertex exists, without touching its frequency.
    pub fn touch_vertex(&mut self, id: &str) {
        self.freq.entry(id.into()).or_insert(0.0);
    }

    pub fn set_frequency(&mut self, id: &str, freq: f64) {
        self.freq.insert(id.into(), freq);
    }

    pub fn add_to_frequency(&mut self, id: &str, delta: f64) {
        *self.freq.entry(id.into()).or_insert(0.0) += delta;
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<()> {
        if src.is_empty() || dst.is_empty() {
            return Err(Error::Validation("edge endpoint id is empty".into()));
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::Validation(format!(
                "edge {src} -> {dst} has invalid weight {weight}"
            )));
        }
        self.touch_vertex(src);
        self.touch_vertex(dst);
        *self.edges.entry((src.into(), dst.into())).or_insert(0.0) += weight;
        Ok(())
    }

    pub fn build(self) -> HotspotGraph {
        let ids: Vec<String> = self.freq.keys().cloned().collect();
        let index: BTreeMap<String, u32> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i as u32))
            .collect();
        let freq: Vec<f64> = self.freq.values().copied().collect();
        let n = ids.len();
        let mut out: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        let mut inc: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        let edge_count = self.edges.len();
        // BTreeMap iteration is (src, dst)-sorted, so adjacency stays sorted.
        for ((src, dst), w) in self.edges {
            let s = index[&src];
            let d = index[&dst];
            out[s as usize].push((d, w));
            inc[d as usize].push((s, w));
        }
        for col in &mut inc {
            col.sort_unstable_by_key(|(s, _)| *s);
        }
        HotspotGraph {
            ids,
            index,
            freq,
            out,
            inc,
            edge_count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geo_point_bounds() {
        assert!(GeoPoint::new(90.0, 180.0).is_ok());
        assert!(GeoPoint::new(-90.0, -180.0).is_ok());
        assert!(GeoPoint::new(90.1, 0.0).is_err());
        assert!(GeoPoint::new(0.0, -180.5).is_err());
        assert!(GeoPoint::new(f64::NAN, 0.0).is_err());
        assert!(GeoPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn metatrail_rejects_empty_and_unordered() {
        assert!(Metatrail::new("t".into(), vec![]).is_err());
        let p = |ts| TrailPoint {
            position: GeoPoint::new(0.0, 0.0).unwrap(),
            timestamp_ms: ts,
            app_label: String::new(),
        };
        assert!(Metatrail::new("t".into(), vec![p(2), p(1)]).is_err());
        assert!(Metatrail::new("t".into(), vec![p(1), p(1), p(2)]).is_ok());
    }

    #[test]
    fn visit_sequence_invariants() {
        let v = |poi: &str, enter, exit| Visit {
            poi_id: poi.into(),
            enter_ms: enter,
            exit_ms: exit,
            app_label: String::new(),
        };
        assert!(VisitSequence::new("t".into(), vec![v("a", 0, 5), v("b", 6, 7)]).is_ok());
        // consecutive duplicate POI
        assert!(VisitSequence::new("t".into(), vec![v("a", 0, 5), v("a", 6, 7)]).is_err());
        // exit before enter
        assert!(VisitSequence::new("t".into(), vec![v("a", 5, 1)]).is_err());
        // out of order
        assert!(VisitSequence::new("t".into(), vec![v("a", 6, 7), v("b", 0, 5)]).is_err());
        // empty is a valid (if useless) sequence
        assert!(VisitSequence::new("t".into(), vec![]).is_ok());
    }

    #[test]
    fn edge_list_empty() {
        let g = HotspotGraph::from_edge_list::<&str>(&[]).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_list_merges_duplicates() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0), ("A", "B", 2.0)]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight("A", "B"), Some(3.0));
    }

    #[test]
    fn edge_list_hand_counted() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0), ("B", "C", 2.0)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge_weight("A", "B"), Some(1.0));
        assert_eq!(g.edge_weight("B", "C"), Some(2.0));
        assert_eq!(g.edge_weight("A", "C"), None);
    }

    #[test]
    fn edge_list_rejects_negative_weight() {
        let err = HotspotGraph::from_edge_list(&[("A", "B", -1.0)]).unwrap_err();
        match err {
            Error::Validation(msg) => {
                assert!(msg.contains("A -> B"), "message should name the edge: {msg}")
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_rejects_empty_ids() {
        assert!(HotspotGraph::from_edge_list(&[("", "B", 1.0)]).is_err());
    }

    #[test]
    fn out_weight_paper_example() {
        // v1 with out-edges of weight 1, 2, 3.
        let g = HotspotGraph::from_edge_list(&[
            ("v1", "v2", 1.0),
            ("v1", "v3", 2.0),
            ("v1", "v4", 3.0),
        ])
        .unwrap();
        assert_eq!(g.out_weight("v1").unwrap(), 6.0);
        assert_eq!(g.in_weight("v1").unwrap(), 0.0);
        assert_eq!(g.in_weight("v3").unwrap(), 2.0);
    }

    #[test]
    fn out_weight_isolated_and_fractional() {
        let mut b = GraphBuilder::new();
        b.touch_vertex("lonely");
        let g = b.build();
        assert_eq!(g.out_weight("lonely").unwrap(), 0.0);

        let g = HotspotGraph::from_edge_list(&[("A", "B", 2.0), ("A", "C", 2.5)]).unwrap();
        assert_eq!(g.out_weight("A").unwrap(), 4.5);
    }

    #[test]
    fn out_weight_unknown_vertex() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0)]).unwrap();
        assert_eq!(g.out_weight("Z"), Err(Error::UnknownVertex("Z".into())));
    }

    #[test]
    fn induced_subgraph() {
        let g = HotspotGraph::from_edge_list(&[
            ("A", "B", 1.0),
            ("B", "C", 2.0),
            ("C", "A", 3.0),
        ])
        .unwrap();
        let members: BTreeSet<String> = ["A".into(), "B".into()].into();
        let sub = g.induced(&members);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(sub.edge_weight("A", "B"), Some(1.0));
    }

    #[test]
    fn self_loops_added_once_per_vertex() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 2.0)]).unwrap();
        let looped = g.with_self_loops(1.0);
        assert_eq!(looped.edge_weight("A", "A"), Some(1.0));
        assert_eq!(looped.edge_weight("B", "B"), Some(1.0));
        assert_eq!(looped.edge_weight("A", "B"), Some(2.0));
        assert_eq!(looped.edge_count(), 3);
        // zero weight is a no-op
        assert_eq!(g.with_self_loops(0.0), g);
    }
}

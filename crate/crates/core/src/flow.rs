//! Flow directions and capacities on the hotspot network: per-vertex and
//! per-pair direction reports, max-flow/min-cut with edge weights as
//! capacities, and capacity bound checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::HotspotGraph;

/// Residuals at or below this are treated as exhausted.
const RESIDUAL_EPS: f64 = 1e-12;
/// Slack for reporting an edge as saturated.
const SATURATION_EPS: f64 = 1e-9;

/// Which way an unordered pair of vertices leans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Balanced,
}

/// Traffic between one unordered vertex pair, canonicalized so `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFlow {
    pub u: String,
    pub v: String,
    pub forward_weight: f64,
    pub backward_weight: f64,
}

impl PairFlow {
    /// `w(u -> v) - w(v -> u)`.
    pub fn imbalance(&self) -> f64 {
        self.forward_weight - self.backward_weight
    }

    pub fn dominant(&self) -> Direction {
        if self.imbalance() > 0.0 {
            Direction::Forward
        } else if self.imbalance() < 0.0 {
            Direction::Backward
        } else {
            Direction::Balanced
        }
    }
}

/// Flow directions read straight off the weights: per-vertex net flow and
/// per-pair imbalance.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionReport {
    /// `out_weight - in_weight` per vertex; sums to zero over the graph.
    pub net_flow: BTreeMap<String, f64>,
    /// One entry per unordered pair with any connecting edge.
    pub pairs: Vec<PairFlow>,
}

pub fn direction_report(g: &HotspotGraph) -> DirectionReport {
    let mut net_flow = BTreeMap::new();
    for (id, _) in g.vertices() {
        let out = g.out_weight(id).expect("own vertex");
        let inw = g.in_weight(id).expect("own vertex");
        net_flow.insert(String::from(id), out - inw);
    }
    let mut pair_weights: BTreeMap<(String, String), (f64, f64)> = BTreeMap::new();
    for (src, dst, w) in g.edges() {
        if src == dst {
            continue;
        }
        let (key, forward) = if src < dst {
            ((src.into(), dst.into()), true)
        } else {
            ((dst.into(), src.into()), false)
        };
        let entry = pair_weights.entry(key).or_insert((0.0, 0.0));
        if forward {
            entry.0 += w;
        } else {
            entry.1 += w;
        }
    }
    let pairs = pair_weights
        .into_iter()
        .map(|((u, v), (forward_weight, backward_weight))| PairFlow {
            u,
            v,
            forward_weight,
            backward_weight,
        })
        .collect();
    DirectionReport { net_flow, pairs }
}

/// A maximum flow from `source` to `sink` with its certifying minimum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    pub source: String,
    pub sink: String,
    pub max_flow: f64,
    /// Edges from the residual-reachable side to its complement; their
    /// capacities sum to `max_flow`.
    pub min_cut_edges: BTreeSet<(String, String)>,
    /// Edges carrying flow equal to their capacity.
    pub saturated: BTreeSet<(String, String)>,
    /// Flow assigned to every edge.
    pub edge_flows: BTreeMap<(String, String), f64>,
}

/// Maximum flow by repeated shortest augmenting paths on the residual
/// network, taking each edge's observed weight as its capacity.
pub fn max_flow(g: &HotspotGraph, source: &str, sink: &str) -> Result<FlowResult> {
    if source == sink {
        return Err(Error::Validation(format!(
            "source and sink are both {source}"
        )));
    }
    let s = g
        .index_of(source)
        .ok_or_else(|| Error::UnknownVertex(source.into()))?;
    let t = g
        .index_of(sink)
        .ok_or_else(|| Error::UnknownVertex(sink.into()))?;

    let n = g.vertex_count();
    // paired residual arcs: arc 2e is forward, 2e + 1 its reverse
    let mut arc_to: Vec<u32> = Vec::new();
    let mut residual: Vec<f64> = Vec::new();
    let mut capacity: Vec<f64> = Vec::new();
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edge_ends: Vec<(u32, u32)> = Vec::new();
    for u in 0..n as u32 {
        for &(v, w) in g.out_edges_at(u) {
            let id = arc_to.len() as u32;
            arc_to.push(v);
            residual.push(w);
            capacity.push(w);
            adjacency[u as usize].push(id);
            arc_to.push(u);
            residual.push(0.0);
            capacity.push(0.0);
            adjacency[v as usize].push(id + 1);
            edge_ends.push((u, v));
        }
    }

    let mut total = 0.0f64;
    let mut parent_arc: Vec<u32> = vec![u32::MAX; n];
    loop {
        // BFS for the shortest augmenting path
        parent_arc.fill(u32::MAX);
        let mut queue: Vec<u32> = vec![s];
        let mut head = 0;
        let mut reached = false;
        'bfs: while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &arc in &adjacency[u as usize] {
                let v = arc_to[arc as usize];
                if residual[arc as usize] > RESIDUAL_EPS
                    && parent_arc[v as usize] == u32::MAX
                    && v != s
                {
                    parent_arc[v as usize] = arc;
                    if v == t {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push(v);
                }
            }
        }
        if !reached {
            break;
        }
        // bottleneck along the path
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            let arc = parent_arc[v as usize];
            bottleneck = bottleneck.min(residual[arc as usize]);
            v = arc_to[(arc ^ 1) as usize];
        }
        // push
        let mut v = t;
        while v != s {
            let arc = parent_arc[v as usize];
            residual[arc as usize] -= bottleneck;
            residual[(arc ^ 1) as usize] += bottleneck;
            v = arc_to[(arc ^ 1) as usize];
        }
        total += bottleneck;
    }

    // residual-reachable side of the cut
    let mut in_source_side = vec![false; n];
    in_source_side[s as usize] = true;
    let mut queue: Vec<u32> = vec![s];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &arc in &adjacency[u as usize] {
            let v = arc_to[arc as usize];
            if residual[arc as usize] > RESIDUAL_EPS && !in_source_side[v as usize] {
                in_source_side[v as usize] = true;
                queue.push(v);
            }
        }
    }

    let mut min_cut_edges = BTreeSet::new();
    let mut saturated = BTreeSet::new();
    let mut edge_flows = BTreeMap::new();
    for (e, &(u, v)) in edge_ends.iter().enumerate() {
        let flow = residual[2 * e + 1];
        let cap = capacity[2 * e];
        let key = (String::from(g.id_at(u)), String::from(g.id_at(v)));
        if in_source_side[u as usize] && !in_source_side[v as usize] {
            min_cut_edges.insert(key.clone());
        }
        if cap > 0.0 && cap - flow <= SATURATION_EPS {
            saturated.insert(key.clone());
        }
        edge_flows.insert(key, flow);
    }

    Ok(FlowResult {
        source: source.into(),
        sink: sink.into(),
        max_flow: total,
        min_cut_edges,
        saturated,
        edge_flows,
    })
}

/// Where a computed flow stands relative to inclusive capacity bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundClass {
    /// Below the lower bound: underflow risk.
    Underflow,
    Within,
    /// Above the upper bound: overflow risk.
    Overflow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub max_flow: f64,
    pub lower: f64,
    pub upper: f64,
    pub class: BoundClass,
}

/// Classifies a flow result against inclusive `[lower, upper]` capacity
/// bounds.
pub fn check_capacity_bounds(flow: &FlowResult, lower: f64, upper: f64) -> Result<BoundReport> {
    if !(lower.is_finite() && upper.is_finite()) || lower < 0.0 {
        return Err(Error::Validation(format!(
            "bounds must be finite and nonnegative, got [{lower}, {upper}]"
        )));
    }
    if lower > upper {
        return Err(Error::Validation(format!(
            "lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    let class = if flow.max_flow < lower {
        BoundClass::Underflow
    } else if flow.max_flow > upper {
        BoundClass::Overflow
    } else {
        BoundClass::Within
    };
    Ok(BoundReport {
        max_flow: flow.max_flow,
        lower,
        upper,
        class,
    })
}

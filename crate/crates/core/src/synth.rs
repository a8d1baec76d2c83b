//! Seeded random graph generators: uniform directed graphs at a given
//! sparse ratio, and planted partitions for clustering oracles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{GraphBuilder, HotspotGraph};

/// Parameters of a uniform random directed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Vertex count; at least 1.
    pub n: usize,
    /// Fraction of the `n(n-1)` possible directed edges present, in (0, 1].
    pub sparse_ratio: f64,
    /// Half-open weight interval `(low, high]`.
    pub weight_range: (f64, f64),
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(n: usize, sparse_ratio: f64, seed: u64) -> Self {
        SynthSpec {
            n,
            sparse_ratio,
            weight_range: (0.0, 1.0),
            seed,
        }
    }

    fn assert_valid(&self) {
        assert!(self.n >= 1, "vertex count must be at least 1");
        assert!(
            self.sparse_ratio > 0.0 && self.sparse_ratio <= 1.0,
            "sparse ratio must be in (0, 1], got {}",
            self.sparse_ratio
        );
        assert!(
            self.weight_range.0 < self.weight_range.1,
            "weight range must be nonempty, got {:?}",
            self.weight_range
        );
    }
}

/// Zero-padded vertex ids so the lexicographic order matches the numeric
/// one.
fn vertex_ids(n: usize) -> Vec<String> {
    let width = if n <= 1 { 1 } else { (n - 1).ilog10() as usize + 1 };
    (0..n).map(|i| format!("v{i:0width$}")).collect()
}

/// Samples exactly `round(sparse_ratio * n(n-1))` distinct directed
/// non-self-loop edges uniformly without replacement and weights them
/// uniformly from the weight range. Vertex frequencies are set to the
/// weighted degree (incoming plus outgoing weight). Deterministic for a
/// fixed spec.
pub fn synth_graph(spec: &SynthSpec) -> HotspotGraph {
    spec.assert_valid();
    let n = spec.n;
    let ids = vertex_ids(n);
    let slots = n * (n - 1);
    let edge_count = libm::round(spec.sparse_ratio * slots as f64) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = GraphBuilder::new();
    for id in &ids {
        b.touch_vertex(id);
    }
    if slots > 0 {
        let (low, high) = spec.weight_range;
        for slot in rand::seq::index::sample(&mut rng, slots, edge_count) {
            let src = slot / (n - 1);
            let rem = slot % (n - 1);
            let dst = rem + usize::from(rem >= src);
            // high - u * span maps u in [0, 1) onto (low, high]
            let w = high - rng.gen::<f64>() * (high - low);
            b.add_edge(&ids[src], &ids[dst], w).expect("positive weight");
        }
    }
    let mut g = b.build();
    g = attach_weighted_degrees(g);
    g
}

/// Directed planted-partition graph: an ordered pair within one block is
/// an edge with probability `p_in`, across blocks with probability
/// `p_out`, all weights 1. Returns the graph and the block index of every
/// vertex.
pub fn planted_partition(
    blocks: &[usize],
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (HotspotGraph, BTreeMap<String, usize>) {
    assert!(
        (0.0..=1.0).contains(&p_out) && (0.0..=1.0).contains(&p_in) && p_out < p_in,
        "probabilities must satisfy 0 <= p_out < p_in <= 1, got p_in={p_in} p_out={p_out}"
    );
    let n: usize = blocks.iter().sum();
    let ids = vertex_ids(n);
    let mut labels = BTreeMap::new();
    let mut block_of: Vec<usize> = Vec::with_capacity(n);
    for (bi, size) in blocks.iter().enumerate() {
        for _ in 0..*size {
            let v = block_of.len();
            labels.insert(ids[v].clone(), bi);
            block_of.push(bi);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    for id in &ids {
        b.touch_vertex(id);
    }
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let p = if block_of[u] == block_of[v] { p_in } else { p_out };
            if rng.gen_bool(p) {
                b.add_edge(&ids[u], &ids[v], 1.0).expect("unit weight");
            }
        }
    }
    (attach_weighted_degrees(b.build()), labels)
}

fn attach_weighted_degrees(g: HotspotGraph) -> HotspotGraph {
    let mut b = GraphBuilder::new();
    for (id, _) in g.vertices() {
        let degree = g.out_weight(id).expect("own vertex") + g.in_weight(id).expect("own vertex");
        b.set_frequency(id, degree);
    }
    for (src, dst, w) in g.edges() {
        b.add_edge(src, dst, w).expect("weights already validated");
    }
    b.build()
}

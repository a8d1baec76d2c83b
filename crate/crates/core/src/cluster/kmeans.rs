//! Lloyd K-means over transition-matrix columns, the decomposition-free
//! baseline the clustering benchmark compares against.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cluster::Clustering;
use crate::error::{Error, Result};
use crate::matrix::TransitionMatrix;
use crate::model::HotspotGraph;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// K-means clustering of the graph's vertices.
///
/// Each vertex's feature vector is its column of the transition matrix.
/// Centroids are initialized from `k` distinct vertices sampled with the
/// seeded generator, then `iters` rounds of Lloyd assignment and update
/// run with no early exit; a terminal assignment pass derives the final
/// membership. Clusters that come up empty during a round are re-seeded
/// from the point farthest from its assigned centroid. The result is
/// deterministic for a fixed seed.
pub fn kmeans_cluster(g: &HotspotGraph, k: usize, iters: usize, seed: u64) -> Result<Clustering> {
    let n = g.vertex_count();
    if k == 0 {
        return Err(Error::Validation("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Validation(format!(
            "k = {k} exceeds the vertex count {n}"
        )));
    }

    let dim = n;
    let features = TransitionMatrix::from_graph(g).to_dense_col_major();
    let feature = |i: usize| &features[i * dim..(i + 1) * dim];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, n, k);
    let mut centroids = vec![0.0f64; k * dim];
    for (c, i) in picked.iter().enumerate() {
        centroids[c * dim..(c + 1) * dim].copy_from_slice(feature(i));
    }

    let mut assign = vec![0usize; n];
    let mut counts = vec![0usize; k];
    let mut rounds = 0;
    loop {
        // assignment: nearest centroid, ties to the lowest centroid index
        for (i, slot) in assign.iter_mut().enumerate() {
            let x = feature(i);
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for c in 0..k {
                let d = squared_distance(x, &centroids[c * dim..(c + 1) * dim]);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            *slot = best;
        }
        counts.fill(0);
        for &a in &assign {
            counts[a] += 1;
        }

        // re-seed empty clusters from the farthest point whose cluster
        // can spare it; k <= n guarantees such a point exists
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let mut farthest: Option<(usize, f64)> = None;
            for i in 0..n {
                if counts[assign[i]] < 2 {
                    continue;
                }
                let d = squared_distance(
                    feature(i),
                    &centroids[assign[i] * dim..(assign[i] + 1) * dim],
                );
                let better = match farthest {
                    None => true,
                    Some((_, fd)) => d > fd,
                };
                if better {
                    farthest = Some((i, d));
                }
            }
            let (i, _) = farthest.expect("a cluster with at least two members exists");
            counts[assign[i]] -= 1;
            assign[i] = c;
            counts[c] = 1;
            centroids[c * dim..(c + 1) * dim].copy_from_slice(feature(i));
        }

        if rounds >= iters {
            break;
        }

        // update: centroids move to the mean of their members
        centroids.fill(0.0);
        for (i, &a) in assign.iter().enumerate() {
            let x = feature(i);
            for (slot, v) in centroids[a * dim..(a + 1) * dim].iter_mut().zip(x) {
                *slot += v;
            }
        }
        for c in 0..k {
            let count = counts[c] as f64;
            for slot in &mut centroids[c * dim..(c + 1) * dim] {
                *slot /= count;
            }
        }
        rounds += 1;
    }

    let mut sets: Vec<BTreeSet<String>> = vec![BTreeSet::new(); k];
    for (i, &a) in assign.iter().enumerate() {
        sets[a].insert(g.vertex_ids()[i].clone());
    }
    sets.retain(|s| !s.is_empty());
    Clustering::from_member_sets(g, sets, true, iters)
}

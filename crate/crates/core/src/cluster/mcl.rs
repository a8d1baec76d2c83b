//! Markov clustering: iterated expansion and inflation of the transition
//! matrix until the flow stabilizes, then cluster extraction from the
//! converged support.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cluster::{Clustering, MclParams};
use crate::error::{Error, Result};
use crate::matrix::{DisjointSet, TransitionMatrix};
use crate::model::HotspotGraph;

/// Entries whose inflated value falls below this are treated as dead flow
/// and removed before renormalizing; far below any convergence epsilon in
/// practical use.
const PRUNE_EPS: f64 = 1e-12;

/// Uniform initial distribution over the graph's vertices: one entry of
/// `1/n` per vertex, in vertex-id order.
pub fn initial_distribution(g: &HotspotGraph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Validation(
            "cannot build a distribution over an empty graph".into(),
        ));
    }
    Ok(vec![1.0 / n as f64; n])
}

/// One expansion + inflation round: raise the matrix to the expansion
/// power, then apply the entrywise inflation power, prune dead entries,
/// and renormalize each column.
pub fn mcl_step(m: &TransitionMatrix, params: &MclParams) -> TransitionMatrix {
    let mut next = m.expand(params.expansion_power);
    next.inflate(params.inflation_power, PRUNE_EPS);
    next
}

/// Markov clustering of the graph.
///
/// Self-loops of `params.self_loop_weight` are added, the column-stochastic
/// matrix is iterated with [`mcl_step`] until the largest entrywise change
/// drops below `params.convergence_eps` or the iteration cap is reached,
/// and clusters are read off the converged flow: attractors (vertices with
/// surviving diagonal flow) merge when they share support, every other
/// vertex joins the attractor holding the largest share of its column mass
/// (ties to the lexicographically smallest id), and vertices with no
/// attracting flow fall back to their support component.
///
/// Hitting the cap is not an error; the result then carries
/// `converged = false`.
pub fn markov_cluster(g: &HotspotGraph, params: &MclParams) -> Result<Clustering> {
    if g.is_empty() {
        return Ok(Clustering {
            subnetworks: Vec::new(),
            converged: true,
            iterations: 0,
        });
    }
    let looped = g.with_self_loops(params.self_loop_weight);
    let mut matrix = TransitionMatrix::from_graph(&looped);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iterations {
        let next = mcl_step(&matrix, params);
        iterations += 1;
        let change = next.max_abs_diff(&matrix);
        matrix = next;
        if change < params.convergence_eps {
            converged = true;
            break;
        }
    }
    let sets = extract_clusters(&matrix);
    Clustering::from_member_sets(g, sets, converged, iterations)
}

// Cluster extraction from a (near-)converged flow matrix.
fn extract_clusters(m: &TransitionMatrix) -> Vec<BTreeSet<String>> {
    let n = m.dim();
    let order = m.order();
    let attractor = m.diagonal_support();
    let mut dsu = DisjointSet::new(n);

    // attractor systems: attractors sharing any flow belong together
    for j in 0..n {
        if !attractor[j] {
            continue;
        }
        for (i, _) in m.column(j) {
            if attractor[*i as usize] {
                dsu.union(j, *i as usize);
            }
        }
    }

    for j in 0..n {
        let col = m.column(j);
        // the attractor holding the largest share of column j's mass;
        // ties resolve to the smallest vertex id, which is the smallest
        // row index because rows follow the sorted id order
        let mut best: Option<(u32, f64)> = None;
        for (i, v) in col {
            if !attractor[*i as usize] {
                continue;
            }
            best = match best {
                Some((bi, bv)) if *v <= bv => Some((bi, bv)),
                _ => Some((*i, *v)),
            };
        }
        match best {
            Some((i, _)) => dsu.union(j, i as usize),
            // no attracting flow (iteration stopped early): stay with the
            // plain support component
            None => {
                for (i, _) in col {
                    dsu.union(j, *i as usize);
                }
            }
        }
    }

    dsu.components()
        .into_iter()
        .map(|comp| comp.iter().map(|&i| order[i as usize].clone()).collect())
        .collect()
}

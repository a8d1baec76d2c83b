//! Graph clustering into affinity subnetworks: Markov clustering, a
//! K-means baseline over transition columns, hub detection, and cluster
//! contraction.

mod kmeans;
mod mcl;

pub use kmeans::kmeans_cluster;
pub use mcl::{initial_distribution, markov_cluster, mcl_step};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{GraphBuilder, HotspotGraph};

/// Parameters of the Markov clustering iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct MclParams {
    /// Matrix power applied in the expansion step. At least 2 for a
    /// meaningful iteration; the default is 2.
    pub expansion_power: u32,
    /// Entrywise (Hadamard) power applied in the inflation step; greater
    /// than 1. The default is 2.
    pub inflation_power: f64,
    /// Iteration cap.
    pub max_iterations: usize,
    /// The iteration stops once the largest entrywise change between
    /// successive matrices falls below this.
    pub convergence_eps: f64,
    /// Self-loop weight added to every vertex before building the flow
    /// matrix; keeps the iteration aperiodic.
    pub self_loop_weight: f64,
}

impl Default for MclParams {
    fn default() -> Self {
        MclParams {
            expansion_power: 2,
            inflation_power: 2.0,
            max_iterations: 500,
            convergence_eps: 1e-9,
            self_loop_weight: 1.0,
        }
    }
}

/// A cluster of hotspot vertices: its members, its hub (the member with
/// the most incident edges in the induced subgraph), and the induced edge
/// weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinitySubnetwork {
    pub members: BTreeSet<String>,
    pub hub: String,
    pub edges: BTreeMap<(String, String), f64>,
}

impl AffinitySubnetwork {
    /// Builds the subnetwork for `members`, computing the hub and the
    /// induced edges from `g`. Degree is a count of incident induced
    /// edges (a self-loop counts once); ties go to the lexicographically
    /// smallest id.
    pub fn from_members(g: &HotspotGraph, members: BTreeSet<String>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Validation("subnetwork has no members".into()));
        }
        let mut degree: BTreeMap<&str, usize> =
            members.iter().map(|m| (m.as_str(), 0)).collect();
        let mut edges = BTreeMap::new();
        for (src, dst, w) in g.edges() {
            if members.contains(src) && members.contains(dst) {
                edges.insert((String::from(src), String::from(dst)), w);
                *degree.get_mut(src).expect("member") += 1;
                if src != dst {
                    *degree.get_mut(dst).expect("member") += 1;
                }
            }
        }
        // degree iterates ids ascending, so a strict improvement keeps the
        // lexicographically smallest id among ties
        let mut best: (&str, usize) = ("", 0);
        let mut first = true;
        for (id, d) in &degree {
            if first || *d > best.1 {
                best = (*id, *d);
                first = false;
            }
        }
        let hub = String::from(best.0);
        Ok(AffinitySubnetwork { members, hub, edges })
    }
}

/// A partition of a graph's vertices into affinity subnetworks.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub subnetworks: Vec<AffinitySubnetwork>,
    /// False when the producing iteration hit its cap before stabilizing.
    pub converged: bool,
    /// Iterations the producing algorithm ran.
    pub iterations: usize,
}

impl Clustering {
    pub(crate) fn from_member_sets(
        g: &HotspotGraph,
        sets: Vec<BTreeSet<String>>,
        converged: bool,
        iterations: usize,
    ) -> Result<Self> {
        let mut subnetworks = sets
            .into_iter()
            .map(|m| AffinitySubnetwork::from_members(g, m))
            .collect::<Result<Vec<_>>>()?;
        subnetworks.sort_by(|a, b| a.members.first().cmp(&b.members.first()));
        Ok(Clustering {
            subnetworks,
            converged,
            iterations,
        })
    }

    pub fn len(&self) -> usize {
        self.subnetworks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subnetworks.is_empty()
    }

    /// Index of the subnetwork containing `poi_id`.
    pub fn subnetwork_of(&self, poi_id: &str) -> Option<usize> {
        self.subnetworks
            .iter()
            .position(|s| s.members.contains(poi_id))
    }

    /// True when the member sets are disjoint and cover exactly the
    /// vertices of `g`.
    pub fn is_partition_of(&self, g: &HotspotGraph) -> bool {
        let mut seen: BTreeSet<&String> = BTreeSet::new();
        for sub in &self.subnetworks {
            for m in &sub.members {
                if !seen.insert(m) {
                    return false;
                }
            }
        }
        seen.len() == g.vertex_count() && g.vertex_ids().iter().all(|id| seen.contains(id))
    }
}

/// Contracts each subnetwork to a single vertex named after its hub.
/// Cross-cluster weights are summed; intra-cluster weights are dropped;
/// the contracted vertex frequency is the sum of its member frequencies.
pub fn contract(g: &HotspotGraph, clustering: &Clustering) -> Result<HotspotGraph> {
    if !clustering.is_partition_of(g) {
        return Err(Error::Validation(
            "clustering does not partition the graph's vertices".into(),
        ));
    }
    let mut cluster_of: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, sub) in clustering.subnetworks.iter().enumerate() {
        for m in &sub.members {
            cluster_of.insert(m, i);
        }
    }
    let name = |i: usize| format!("cluster:{}", clustering.subnetworks[i].hub);

    let mut b = GraphBuilder::new();
    for (i, sub) in clustering.subnetworks.iter().enumerate() {
        let freq: f64 = sub
            .members
            .iter()
            .map(|m| g.frequency(m).expect("member of partition"))
            .sum();
        b.set_frequency(&name(i), freq);
    }
    for (src, dst, w) in g.edges() {
        let (cs, cd) = (cluster_of[src], cluster_of[dst]);
        if cs != cd {
            b.add_edge(&name(cs), &name(cd), w)?;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn two_block_graph() -> HotspotGraph {
        let mut b = GraphBuilder::new();
        // block 1: a <-> b, block 2: c <-> d, cross edges a->c (2), b->d (3)
        b.add_edge("a", "b", 1.0).unwrap();
        b.add_edge("b", "a", 1.0).unwrap();
        b.add_edge("c", "d", 1.0).unwrap();
        b.add_edge("d", "c", 1.0).unwrap();
        b.add_edge("a", "c", 2.0).unwrap();
        b.add_edge("b", "d", 3.0).unwrap();
        b.set_frequency("a", 1.0);
        b.set_frequency("b", 2.0);
        b.set_frequency("c", 3.0);
        b.set_frequency("d", 4.0);
        b.build()
    }

    fn clustering_of(g: &HotspotGraph, sets: Vec<BTreeSet<String>>) -> Clustering {
        Clustering::from_member_sets(g, sets, true, 0).unwrap()
    }

    #[test]
    fn hub_prefers_highest_degree_then_lexicographic() {
        let g = two_block_graph();
        // induced on {a, b, c}: edges a->b, b->a, a->c; degrees a=3, b=2, c=1
        let sub = AffinitySubnetwork::from_members(
            &g,
            ["a".to_string(), "b".to_string(), "c".to_string()].into(),
        )
        .unwrap();
        assert_eq!(sub.hub, "a");
        assert_eq!(sub.edges.len(), 3);

        // tie: a <-> b both have degree 2 -> lexicographically smaller
        let sub =
            AffinitySubnetwork::from_members(&g, ["a".to_string(), "b".to_string()].into())
                .unwrap();
        assert_eq!(sub.hub, "a");
    }

    #[test]
    fn contract_sums_cross_weights() {
        let g = two_block_graph();
        let c = clustering_of(
            &g,
            vec![
                ["a".to_string(), "b".to_string()].into(),
                ["c".to_string(), "d".to_string()].into(),
            ],
        );
        let contracted = contract(&g, &c).unwrap();
        assert_eq!(contracted.vertex_count(), 2);
        // cross weights 2 + 3 collapse into a single edge of weight 5
        assert_eq!(contracted.edge_weight("cluster:a", "cluster:c"), Some(5.0));
        assert_eq!(contracted.edge_count(), 1);
        assert_eq!(contracted.frequency("cluster:a").unwrap(), 3.0);
        assert_eq!(contracted.frequency("cluster:c").unwrap(), 7.0);
    }

    #[test]
    fn contract_singletons_is_identity_without_self_loops() {
        let g = two_block_graph();
        let sets: Vec<BTreeSet<String>> = g
            .vertex_ids()
            .iter()
            .map(|id| BTreeSet::from([id.clone()]))
            .collect();
        let c = clustering_of(&g, sets);
        let contracted = contract(&g, &c).unwrap();
        assert_eq!(contracted.vertex_count(), g.vertex_count());
        assert_eq!(contracted.edge_count(), g.edge_count());
        for (src, dst, w) in g.edges() {
            assert_eq!(
                contracted.edge_weight(&format!("cluster:{src}"), &format!("cluster:{dst}")),
                Some(w)
            );
        }
    }

    #[test]
    fn contract_single_cluster_has_no_edges() {
        let g = two_block_graph();
        let all: BTreeSet<String> = g.vertex_ids().iter().cloned().collect();
        let c = clustering_of(&g, vec![all]);
        let contracted = contract(&g, &c).unwrap();
        assert_eq!(contracted.vertex_count(), 1);
        assert_eq!(contracted.edge_count(), 0);
        assert_eq!(contracted.frequency("cluster:a").unwrap(), 10.0);
    }

    #[test]
    fn contract_rejects_non_partition() {
        let g = two_block_graph();
        // missing d
        let c = clustering_of(
            &g,
            vec![
                ["a".to_string(), "b".to_string()].into(),
                ["c".to_string()].into(),
            ],
        );
        assert!(matches!(contract(&g, &c), Err(Error::Validation(_))));
    }

    #[test]
    fn contract_conserves_cross_weight() {
        let g = two_block_graph();
        let c = clustering_of(
            &g,
            vec![
                ["a".to_string(), "d".to_string()].into(),
                ["b".to_string(), "c".to_string()].into(),
            ],
        );
        let contracted = contract(&g, &c).unwrap();
        let inter: f64 = g
            .edges()
            .filter(|(s, d, _)| c.subnetwork_of(s) != c.subnetwork_of(d))
            .map(|(_, _, w)| w)
            .sum();
        assert!((contracted.total_weight() - inter).abs() < 1e-12);
    }
}

//! Sequential visiting patterns: per-trail visit orders under the
//! latest-timestamp rule, aggregated by support.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::cluster::{AffinitySubnetwork, Clustering};
use crate::model::VisitSequence;

/// An aggregated visit order over POIs or over subnetworks, with the
/// number of trails exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialPattern {
    pub sequence: Vec<String>,
    pub support: u64,
}

/// Restricts a trail's visits to `members`, keeps only the visit with the
/// latest enter timestamp per POI, and sorts the survivors by that
/// timestamp (ties by POI id).
pub fn project_trail(seq: &VisitSequence, members: &BTreeSet<String>) -> Vec<(String, u64)> {
    let mut latest: BTreeMap<&str, u64> = BTreeMap::new();
    for visit in seq.visits() {
        if members.contains(&visit.poi_id) {
            let slot = latest.entry(visit.poi_id.as_str()).or_insert(0);
            if visit.enter_ms >= *slot {
                *slot = visit.enter_ms;
            }
        }
    }
    let mut projected: Vec<(String, u64)> = latest
        .into_iter()
        .map(|(poi, ts)| (String::from(poi), ts))
        .collect();
    projected.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    projected
}

fn aggregate(candidates: Vec<Vec<String>>, min_support: u64) -> Vec<SequentialPattern> {
    let mut counts: BTreeMap<Vec<String>, u64> = BTreeMap::new();
    for candidate in candidates {
        *counts.entry(candidate).or_insert(0) += 1;
    }
    let mut patterns: Vec<SequentialPattern> = counts
        .into_iter()
        .filter(|(_, support)| *support >= min_support)
        .map(|(sequence, support)| SequentialPattern { sequence, support })
        .collect();
    patterns.sort_by(|a, b| b.support.cmp(&a.support).then(a.sequence.cmp(&b.sequence)));
    patterns
}

/// Visit orders inside one affinity subnetwork.
///
/// Each trail contributes its projection onto the subnetwork's members as
/// one candidate order (projections shorter than two visits carry no order
/// and are skipped); identical orders aggregate, orders below
/// `min_support` are dropped, and the result is sorted by support
/// descending with lexicographic ties.
pub fn mine_intra_patterns(
    seqs: &[VisitSequence],
    sub: &AffinitySubnetwork,
    min_support: u64,
) -> Vec<SequentialPattern> {
    let candidates = seqs
        .iter()
        .map(|seq| {
            project_trail(seq, &sub.members)
                .into_iter()
                .map(|(poi, _)| poi)
                .collect::<Vec<String>>()
        })
        .filter(|order| order.len() >= 2)
        .collect();
    aggregate(candidates, min_support)
}

/// Visit orders between subnetworks.
///
/// Visits are relabeled by the hub id of their subnetwork (visits at POIs
/// outside the clustering are dropped), consecutive duplicate labels
/// collapse into one stay that keeps its first enter timestamp, and the
/// latest-timestamp projection and aggregation of [`mine_intra_patterns`]
/// then run over the labels.
pub fn mine_inter_patterns(
    seqs: &[VisitSequence],
    clustering: &Clustering,
    min_support: u64,
) -> Vec<SequentialPattern> {
    let mut hub_of: BTreeMap<&str, &str> = BTreeMap::new();
    for sub in &clustering.subnetworks {
        for member in &sub.members {
            hub_of.insert(member, &sub.hub);
        }
    }

    let mut candidates = Vec::new();
    for seq in seqs {
        // relabel and collapse consecutive duplicates
        let mut stays: Vec<(&str, u64)> = Vec::new();
        for visit in seq.visits() {
            let Some(&hub) = hub_of.get(visit.poi_id.as_str()) else {
                continue;
            };
            match stays.last() {
                Some((last, _)) if *last == hub => {}
                _ => stays.push((hub, visit.enter_ms)),
            }
        }
        // latest enter timestamp per label, then chronological order
        let mut latest: BTreeMap<&str, u64> = BTreeMap::new();
        for (hub, enter) in stays {
            let slot = latest.entry(hub).or_insert(0);
            if enter >= *slot {
                *slot = enter;
            }
        }
        let mut order: Vec<(&str, u64)> = latest.into_iter().collect();
        order.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        if order.len() >= 2 {
            candidates.push(order.into_iter().map(|(hub, _)| String::from(hub)).collect());
        }
    }
    aggregate(candidates, min_support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{HotspotGraph, Visit};
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(trail: &str, visits: &[(&str, u64)]) -> VisitSequence {
        let visits = visits
            .iter()
            .map(|(poi, enter)| Visit {
                poi_id: (*poi).into(),
                enter_ms: *enter,
                exit_ms: *enter,
                app_label: String::new(),
            })
            .collect();
        VisitSequence::new(trail.into(), visits).unwrap()
    }

    fn members(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    fn subnetwork(g: &HotspotGraph, ids: &[&str]) -> AffinitySubnetwork {
        AffinitySubnetwork::from_members(g, members(ids)).unwrap()
    }

    #[test]
    fn project_latest_timestamp_rule() {
        // A, B, A: the second A visit is the latest, so A sorts after B
        let s = seq("t", &[("A", 10), ("B", 20), ("A", 30)]);
        let projected = project_trail(&s, &members(&["A", "B"]));
        assert_eq!(
            projected,
            vec![("B".to_string(), 20), ("A".to_string(), 30)]
        );
    }

    #[test]
    fn project_no_member_visits() {
        let s = seq("t", &[("X", 10), ("Y", 20)]);
        assert!(project_trail(&s, &members(&["A"])).is_empty());
    }

    #[test]
    fn project_distinct_ordered_unchanged() {
        let s = seq("t", &[("A", 10), ("B", 20), ("C", 30)]);
        let projected = project_trail(&s, &members(&["A", "B", "C"]));
        let order: Vec<&str> = projected.iter().map(|(p, _)| p.as_str()).collect();
        assert_eq!(order, ["A", "B", "C"]);
    }

    #[test]
    fn intra_aggregates_identical_orders() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 3.0)]).unwrap();
        let sub = subnetwork(&g, &["A", "B"]);
        let trails = [
            seq("t1", &[("A", 1), ("B", 2)]),
            seq("t2", &[("A", 5), ("B", 9)]),
            seq("t3", &[("A", 3), ("B", 4)]),
        ];
        let patterns = mine_intra_patterns(&trails, &sub, 1);
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].sequence, vec!["A".to_string(), "B".to_string()]);
        assert_eq!(patterns[0].support, 3);
    }

    #[test]
    fn intra_two_orders_rank_by_support() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0), ("B", "A", 1.0)]).unwrap();
        let sub = subnetwork(&g, &["A", "B"]);
        let trails = [
            seq("t1", &[("A", 1), ("B", 2)]),
            seq("t2", &[("A", 1), ("B", 2)]),
            seq("t3", &[("B", 1), ("A", 2)]),
        ];
        let patterns = mine_intra_patterns(&trails, &sub, 1);
        assert_eq!(patterns.len(), 2);
        assert_eq!(patterns[0].sequence, vec!["A".to_string(), "B".to_string()]);
        assert_eq!(patterns[0].support, 2);
        assert_eq!(patterns[1].sequence, vec!["B".to_string(), "A".to_string()]);
        assert_eq!(patterns[1].support, 1);
    }

    #[test]
    fn intra_short_projections_yield_nothing() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0)]).unwrap();
        let sub = subnetwork(&g, &["A"]);
        let trails = [seq("t1", &[("A", 1), ("B", 2)])];
        assert!(mine_intra_patterns(&trails, &sub, 1).is_empty());
    }

    #[test]
    fn intra_min_support_filters() {
        let g = HotspotGraph::from_edge_list(&[("A", "B", 1.0), ("B", "A", 1.0)]).unwrap();
        let sub = subnetwork(&g, &["A", "B"]);
        let trails = [
            seq("t1", &[("A", 1), ("B", 2)]),
            seq("t2", &[("A", 1), ("B", 2)]),
            seq("t3", &[("B", 1), ("A", 2)]),
        ];
        let patterns = mine_intra_patterns(&trails, &sub, 2);
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].support, 2);
    }

    fn two_cluster_fixture() -> (HotspotGraph, Clustering) {
        let g = HotspotGraph::from_edge_list(&[
            ("a1", "a2", 2.0),
            ("a2", "a1", 1.0),
            ("b1", "b2", 2.0),
            ("b2", "b1", 1.0),
            ("a2", "b1", 1.0),
        ])
        .unwrap();
        let clustering = Clustering::from_member_sets(
            &g,
            vec![members(&["a1", "a2"]), members(&["b1", "b2"])],
            true,
            0,
        )
        .unwrap();
        (g, clustering)
    }

    #[test]
    fn inter_relabels_and_collapses() {
        let (_, clustering) = two_cluster_fixture();
        // a1, a2 (cluster a1) then b1 (cluster b1): pattern [a1, b1]
        let trails = [seq("t", &[("a1", 1), ("a2", 2), ("b1", 3)])];
        let patterns = mine_inter_patterns(&trails, &clustering, 1);
        assert_eq!(patterns.len(), 1);
        assert_eq!(
            patterns[0].sequence,
            vec!["a1".to_string(), "b1".to_string()]
        );
        assert_eq!(patterns[0].support, 1);
    }

    #[test]
    fn inter_single_cluster_trail_is_too_short() {
        let (_, clustering) = two_cluster_fixture();
        let trails = [seq("t", &[("a1", 1), ("a2", 2), ("a1", 3)])];
        assert!(mine_inter_patterns(&trails, &clustering, 1).is_empty());
    }

    #[test]
    fn inter_opposite_orders_are_two_patterns() {
        let (_, clustering) = two_cluster_fixture();
        let trails = [
            seq("t1", &[("a1", 1), ("b2", 2)]),
            seq("t2", &[("b1", 1), ("a2", 2)]),
        ];
        let patterns = mine_inter_patterns(&trails, &clustering, 1);
        assert_eq!(patterns.len(), 2);
    }

    #[test]
    fn inter_on_singleton_clustering_matches_intra() {
        let g = HotspotGraph::from_edge_list(&[
            ("A", "B", 1.0),
            ("B", "C", 1.0),
            ("C", "A", 1.0),
        ])
        .unwrap();
        let singleton = Clustering::from_member_sets(
            &g,
            vec![members(&["A"]), members(&["B"]), members(&["C"])],
            true,
            0,
        )
        .unwrap();
        let sub = subnetwork(&g, &["A", "B", "C"]);
        let trails = [
            seq("t1", &[("A", 1), ("B", 2), ("C", 3)]),
            seq("t2", &[("C", 1), ("B", 5), ("A", 9)]),
            seq("t3", &[("A", 1), ("B", 2), ("A", 7)]),
        ];
        assert_eq!(
            mine_inter_patterns(&trails, &singleton, 1),
            mine_intra_patterns(&trails, &sub, 1)
        );
    }
}

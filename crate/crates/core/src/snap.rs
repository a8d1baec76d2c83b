//! Snapping raw trails onto a POI catalog.
//!
//! A visit is a maximal run of consecutive snapped points at one POI;
//! points that snap to no POI are dropped without splitting the sequence,
//! so the surviving visits still form transitions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geo::haversine_m;
use crate::model::{GeoPoint, Metatrail, Poi, Visit, VisitSequence};

/// Snapping parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapConfig {
    /// Maximum snap distance in meters. Must be positive.
    pub radius_m: f64,
    /// Visits spanning less than this many milliseconds are dropped.
    pub min_dwell_ms: u64,
}

impl Default for SnapConfig {
    fn default() -> Self {
        SnapConfig {
            radius_m: 50.0,
            min_dwell_ms: 0,
        }
    }
}

impl SnapConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.radius_m.is_finite() || self.radius_m <= 0.0 {
            return Err(Error::Validation(format!(
                "snap radius must be positive, got {}",
                self.radius_m
            )));
        }
        Ok(())
    }
}

/// Nearest POI within `radius_m` of `point`, or `None`. Distance ties go
/// to the lexicographically smaller `poi_id`.
pub fn nearest_poi<'a>(pois: &'a [Poi], point: &GeoPoint, radius_m: f64) -> Option<&'a Poi> {
    let mut best: Option<(&Poi, f64)> = None;
    for poi in pois {
        let d = haversine_m(&poi.position, point);
        if d > radius_m {
            continue;
        }
        best = match best {
            None => Some((poi, d)),
            Some((b, bd)) => {
                if d < bd || (d == bd && poi.poi_id < b.poi_id) {
                    Some((poi, d))
                } else {
                    Some((b, bd))
                }
            }
        };
    }
    best.map(|(p, _)| p)
}

// A run of consecutive points at one POI, with label counts kept until
// runs are final so merged runs can still elect a label.
struct Run {
    poi_id: String,
    enter_ms: u64,
    exit_ms: u64,
    labels: BTreeMap<String, u32>,
}

impl Run {
    fn label(&self) -> String {
        // most frequent label; ties go to the lexicographically smallest,
        // which BTreeMap order gives us by keeping strict improvements only
        let mut best: Option<(&String, u32)> = None;
        for (label, count) in &self.labels {
            match best {
                Some((_, bc)) if *count <= bc => {}
                _ => best = Some((label, *count)),
            }
        }
        best.map(|(l, _)| l.clone()).unwrap_or_default()
    }
}

/// Snaps a trail onto the catalog: each point maps to the nearest POI
/// within the radius (dropped when none), runs collapse into visits, and
/// visits shorter than the dwell threshold are removed.
pub fn snap_trail(trail: &Metatrail, pois: &[Poi], cfg: &SnapConfig) -> Result<VisitSequence> {
    cfg.validate()?;
    if pois.is_empty() {
        return Err(Error::Validation("POI catalog is empty".into()));
    }

    let mut runs: Vec<Run> = Vec::new();
    for point in trail.points() {
        let Some(poi) = nearest_poi(pois, &point.position, cfg.radius_m) else {
            continue;
        };
        match runs.last_mut() {
            Some(run) if run.poi_id == poi.poi_id => {
                run.exit_ms = point.timestamp_ms;
                *run.labels.entry(point.app_label.clone()).or_insert(0) += 1;
            }
            _ => {
                let mut labels = BTreeMap::new();
                labels.insert(point.app_label.clone(), 1);
                runs.push(Run {
                    poi_id: poi.poi_id.clone(),
                    enter_ms: point.timestamp_ms,
                    exit_ms: point.timestamp_ms,
                    labels,
                });
            }
        }
    }

    runs.retain(|r| r.exit_ms - r.enter_ms >= cfg.min_dwell_ms);

    // Dropping a short run can leave equal POIs adjacent; merge them so
    // the sequence invariant holds.
    let mut merged: Vec<Run> = Vec::new();
    for run in runs {
        match merged.last_mut() {
            Some(prev) if prev.poi_id == run.poi_id => {
                prev.exit_ms = run.exit_ms;
                for (label, count) in run.labels {
                    *prev.labels.entry(label).or_insert(0) += count;
                }
            }
            _ => merged.push(run),
        }
    }

    let visits = merged
        .into_iter()
        .map(|run| Visit {
            app_label: run.label(),
            poi_id: run.poi_id,
            enter_ms: run.enter_ms,
            exit_ms: run.exit_ms,
        })
        .collect();
    VisitSequence::new(trail.trail_id().into(), visits)
}

/// Number of visits (not trails) per POI across all sequences.
pub fn visit_frequency(seqs: &[VisitSequence]) -> BTreeMap<String, u64> {
    let mut freq = BTreeMap::new();
    for seq in seqs {
        for visit in seq.visits() {
            *freq.entry(visit.poi_id.clone()).or_insert(0) += 1;
        }
    }
    freq
}

//! Core graph analytics for crowdsourced location trails.
//!
//! The crate turns app-labeled trajectories ("metatrails") into a set of
//! marketing-oriented graph features:
//!
//! - [`snap`]: snapping raw trail points onto a catalog of points of
//!   interest, producing [`model::VisitSequence`]s;
//! - [`hotspot`]: building the directed hotspot network and its
//!   column-stochastic transition matrix;
//! - [`cluster`]: Markov clustering into affinity subnetworks, a K-means
//!   baseline, hub detection, and cluster contraction;
//! - [`pattern`]: sequential visiting patterns within and between
//!   subnetworks;
//! - [`flow`]: flow directions, max-flow / min-cut capacities, and
//!   capacity bound checks;
//! - [`synth`]: seeded random and planted-partition graph generators.
//!
//! The crate is `no_std` (with `alloc`); anything touching files, wall
//! clocks, or a terminal lives in the companion `trailnet` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cluster;
pub mod error;
pub mod flow;
pub mod geo;
pub mod hotspot;
pub mod matrix;
pub mod model;
pub mod pattern;
pub mod snap;
pub mod synth;

pub use cluster::{AffinitySubnetwork, Clustering, MclParams};
pub use error::{Error, Result};
pub use matrix::TransitionMatrix;
pub use model::{GeoPoint, HotspotGraph, Metatrail, Poi, TrailPoint, Visit, VisitSequence};

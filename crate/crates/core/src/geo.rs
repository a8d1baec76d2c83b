//! Great-circle distance on the WGS84 sphere approximation.

use crate::model::GeoPoint;

/// Mean Earth radius in meters.
pub const MEAN_EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Haversine distance between two points, in meters.
///
/// Sub-centimeter accuracy is irrelevant at the snap radii this crate
/// works with, so the spherical formula is used as-is.
pub fn haversine_m(a: &GeoPoint, b: &GeoPoint) -> f64 {
    let lat_a = a.lat().to_radians();
    let lat_b = b.lat().to_radians();
    let d_lat = (b.lat() - a.lat()).to_radians();
    let d_lon = (b.lon() - a.lon()).to_radians();

    let s_lat = libm::sin(d_lat / 2.0);
    let s_lon = libm::sin(d_lon / 2.0);
    let h = s_lat * s_lat + libm::cos(lat_a) * libm::cos(lat_b) * s_lon * s_lon;
    2.0 * MEAN_EARTH_RADIUS_M * libm::atan2(libm::sqrt(h), libm::sqrt(1.0 - h))
}

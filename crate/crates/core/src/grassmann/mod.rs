//! Charts, planes, overlaps, stationary angles and geodesics on `G_n(C^(n+m))`.

mod angles;
mod chart;
mod geodesic;
mod plucker;
pub mod random;
mod types;

pub use angles::{angles_to_origin, stationary_angles_svd, stationary_angles_w, MIN_OVERLAP};
pub use chart::{cayley_distance, chart_to_plane, cos_cayley, overlap, plane_to_chart};
pub use geodesic::{
    exp0, geodesic_chart, geodesic_distance0, geodesic_group, geodesic_residual, geodesic_residual_curve, log0,
};
pub use plucker::{normalized_pairing, plucker, plucker_pairing};
pub use random::{haar_random_chart, haar_random_chart_with, haar_random_plane, haar_random_plane_with};
pub use types::{AngleSpectrum, ChartPoint, Plane, PluckerVector, Signature, TangentCoord};

//! Distance sets, distance histograms, bisectors and isosceles triangles in F_p^2.

mod bisector;
mod distance;
mod isosceles;
mod occupancy;

pub use bisector::{
    bisector, bisector_census, Bisector, BisectorCensus, BisectorClass, BISECTOR_POINT_BUDGET,
};
pub use distance::{
    algdist, distance_energy, distance_set_explicit, distance_set_product, sr_histogram,
    NuHistogram, PointSet2D, QuadraticForm, SrHistogram, EXPLICIT_POINT_BUDGET,
};
pub use isosceles::{
    isosceles_census, isosceles_census_brute, isosceles_via_incidence,
    isosceles_via_incidence_parts, IsoscelesCensus, IsoscelesIncidence, ISOSCELES_WORK_BUDGET,
};
pub use occupancy::{max_line_circle_occupancy, OCCUPANCY_POINT_BUDGET};

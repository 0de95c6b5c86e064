//! Points, lines and planes over F_p, and exact incidence counting.

mod count;
mod multiset;
mod objects;
mod theorems;

pub use count::{
    choose_strategy_2d, choose_strategy_3d, count_incidences_2d, count_incidences_2d_with,
    count_incidences_3d, count_incidences_3d_with, pencil_2d, pencil_3d, Strategy,
};
pub use multiset::{LineMultiset, Multiset, PlaneMultiset, PointMultiset2, PointMultiset3};
pub use objects::{
    all_lines, all_planes, all_points2, all_points3, Line2, Plane3, Point2, Point3,
};
pub use theorems::{
    hanson_check, stevens_dezeeuw_bound, vinh_check, vinh_plane_check, BoundKind,
    IncidenceReport, BUDGET_SLACK,
};

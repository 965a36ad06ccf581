//! Topological rings, hom sets with the affine topology, glued schemes and
//! their points with the chart topology.

mod affine;
mod homs;
mod points;
mod scheme;
mod topring;

pub use affine::{
    affine_label, affine_specialization, affine_topology, affine_topology_on, PointSpace,
};
pub use homs::{hom_points, hom_set, induced_map, induced_map_on, AffinePoint, SearchLimits};
pub use points::{
    chart_data, chart_topology, psi_image, scheme_points, ChartData, RationalPoints, SchemePoint,
    MAX_POINTS,
};
pub use scheme::{CoverPiece, Covering, Gluing, SchemePresentation};
pub use topring::{
    has_open_unit_group, is_hausdorff_ring, is_topological_ring, OperationWitness, TopRing,
};

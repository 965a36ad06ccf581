//! Finite topological spaces.

mod map;
mod pointset;
mod topology;

pub use map::{classify_map, is_continuous, FiniteMap, MapFlags};
pub use pointset::PointSet;
pub use topology::{FiniteTopology, TopologyOrder, MAX_OPENS};

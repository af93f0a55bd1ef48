//! Exhaustive enumeration of small rooted planar Eulerian triangulations,
//! with distances, slices, dividing lines and hull perimeters measured
//! directly on the maps.

pub mod counts;
pub mod distance;
pub mod map;
pub mod slice;

use thiserror::Error;

pub use counts::{
    all_slices, count_hull, count_two_point, marked_configurations, split_slice,
    verify_slice_split, SplitCase, SplitRecord, SplitReport,
};
pub use distance::{oriented_distances, DistanceLabeling};
pub use map::{enumerate_maps, rooted_codes_by_relabeling, Dart, EulerianMap, F_MAX};
pub use slice::{
    cut_slice, leftmost_backward_path, DividingLine, Side, Slice, SliceDart, SliceEdge, SliceVertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("F = {f} outside the supported range 1..={max}")]
    OutOfRange { f: usize, max: usize },
    #[error("vertex {0} is unreachable by oriented paths")]
    Unreachable(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

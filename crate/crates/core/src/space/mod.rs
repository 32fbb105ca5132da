//! Lazy locally finite graphs, certified metric balls, l2 products and the
//! four-point hyperbolicity estimate.

mod ball;
mod builtin;
mod delta;
mod key;
mod lazy;
mod product;

pub use ball::{grow_ball, Ball, BallDump};
pub use builtin::{decode_line, line, line_vertex, tree_regular, tree_word, LineOracle, RegularTreeOracle};
pub use delta::{certified_pair_table, four_point_defect_twice, four_point_delta, DeltaEstimate, DeltaOptions};
pub use key::{KeyReader, KeyWriter, VertexKey};
pub use lazy::{LazySpace, NeighborOracle, SpaceError};
pub use product::{product_distance, Point, ProductSpace};

/// Default search cap for ambient distance computations.
pub const DEFAULT_DISTANCE_CAP: u32 = 256;

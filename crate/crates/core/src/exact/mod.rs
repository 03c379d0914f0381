//! Exhaustive branch-and-bound solver for every meaningful variant at desk
//! scale, plus small combinatorial oracles for the hardness reductions.

mod oracles;
mod search;

pub use oracles::{min_vertex_cover, solve_3partition, THREE_PARTITION_LIMIT, VERTEX_COVER_LIMIT};
pub use search::{solve_exact, EdgeOrder, ExactOptions};

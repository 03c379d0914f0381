pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod model;
pub mod reductions;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};

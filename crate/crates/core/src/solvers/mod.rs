//! Polynomial-time solvers for the tractable criterion combinations, plus
//! the linear-programming toolkit they share with the exact solver.

mod flow;
mod greedy;
mod lp;
mod rounding;
pub mod simplex;
mod trivial;

pub use flow::solve_fractional_assignment;
pub use greedy::greedy_assign;
pub use lp::{export_linear_program, solve_linear, LinearProgram, LpRow};
pub(crate) use lp::solve_fixed_centers;
pub use rounding::{round_fractional, FractionalArc, RoundingGraph, RoundingNode, RoundingOutcome};
pub use simplex::{LpSolution, Relation};
pub use trivial::solve_trivial;

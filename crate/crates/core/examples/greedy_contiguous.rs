//! Nearest-center allocation on a weighted graph: optimal, and contiguous
//! without asking for it.

use edgedist::graph::Graph;
use edgedist::model::{objective, validate, Instance};
use edgedist::scalar::ratio;

fn main() -> edgedist::Result<()> {
    let w = |n| ratio(n, 1);
    let graph = Graph::new(
        6,
        vec![(0, 1, w(2)), (1, 2, w(1)), (2, 3, w(4)), (3, 4, w(1)), (4, 5, w(2)), (5, 0, w(3)), (1, 4, w(5))],
    )?;
    let instance = Instance::builder(graph, 2).variant("CIOW".parse()?).centers(vec![0, 3]).alpha(ratio(1, 2)).build()?;
    let a = edgedist::solvers::greedy_assign(&instance)?;
    println!("labels    {:?}", a.labels().unwrap());
    println!("objective {}", objective(&instance, &a)?);
    println!("feasible  {}", validate(&instance, &a)?.is_feasible());
    Ok(())
}

//! Balanced compact allocation: min-cost flow for the relaxation, then the
//! rounding-graph elimination on a hand-made fractional optimum.

use edgedist::graph::Graph;
use edgedist::model::{objective, Assignment, BalanceSpec, Instance};
use edgedist::scalar::{ratio, Rational};
use edgedist::solvers::{round_fractional, solve_fractional_assignment};

fn main() -> edgedist::Result<()> {
    // a 4-cycle with both centers on vertex 0: allocations are interchangeable
    let graph: Graph = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?;
    let instance = Instance::builder(graph, 2)
        .variant("BIO".parse()?)
        .centers(vec![0, 0])
        .balance(BalanceSpec::Additive { tau: Rational::from_integer(0) })
        .build()?;

    let flow = solve_fractional_assignment(&instance)?;
    println!("flow optimum {} labels {:?}", objective(&instance, &flow)?, flow.labels());

    let half = ratio(1, 2);
    let mixed = Assignment::new(vec![vec![half; 4], vec![half; 4]], vec![0, 0])?;
    let out = round_fractional(&instance, &mixed)?;
    println!(
        "rounded in {} iteration(s), fractional entries {:?}, objective {} -> {}",
        out.iterations,
        out.fractional_trace,
        objective(&instance, &mixed)?,
        objective(&instance, &out.assignment)?
    );
    println!("labels {:?}", out.assignment.labels().unwrap());
    Ok(())
}

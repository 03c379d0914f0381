//! Linearised model text for a small balanced instance, re-read and solved.

use edgedist::graph::Graph;
use edgedist::model::{BalanceSpec, Instance};
use edgedist::scalar::ratio;
use edgedist::solvers::{export_linear_program, LinearProgram};

fn main() -> edgedist::Result<()> {
    let graph: Graph = Graph::path(4);
    let instance = Instance::builder(graph, 2)
        .variant("BO".parse()?)
        .centers(vec![0, 3])
        .balance(BalanceSpec::explicit(ratio(3, 2), ratio(3, 2)))
        .build()?;
    let text = export_linear_program(&instance, instance.variant())?.to_text();
    print!("{text}");
    let solved = LinearProgram::parse(&text)?.solve()?;
    println!("optimum {}", solved.objective);
    Ok(())
}

//! Exhaustive search on an NP-hard variant: node selection with compactness
//! and balance.

use edgedist::exact::{solve_exact, ExactOptions};
use edgedist::model::{objective, BalanceSpec, Instance};
use edgedist::reductions::random_connected_graph;
use edgedist::scalar::ratio;

fn main() -> edgedist::Result<()> {
    let graph = random_connected_graph(7, 4, false, 11);
    let instance = Instance::builder(graph, 3)
        .variant("BCINO".parse()?)
        .balance(BalanceSpec::Additive { tau: ratio(1, 3) })
        .alpha(ratio(1, 2))
        .build()?;
    let options = ExactOptions { threads: 2, ..ExactOptions::default() };
    let a = solve_exact(&instance, &options)?;
    println!("centers   {:?}", a.centers());
    println!("labels    {:?}", a.labels().unwrap());
    println!("loads     {:?}", a.loads(instance.graph()).iter().map(|l| l.to_string()).collect::<Vec<_>>());
    println!("objective {}", objective(&instance, &a)?);
    Ok(())
}

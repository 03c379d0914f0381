//! Balanced contiguous two-district split and where the arms family breaks.

use edgedist::bounds::{tightness_bound, two_district_partition};
use edgedist::exact::{solve_exact, ExactOptions};
use edgedist::model::BalanceSpec;
use edgedist::reductions::{build_arms_instance, random_connected_graph};
use edgedist::scalar::ratio;

fn main() -> edgedist::Result<()> {
    let graph = random_connected_graph(12, 9, false, 7);
    let split = two_district_partition(&graph)?;
    let m = graph.edge_count();
    println!(
        "{m} edges -> sizes {:?} within [{}, {}], cut-point {}, {} relocation(s), {:?}",
        split.sizes(),
        m.div_ceil(3),
        2 * m / 3,
        split.cut_point,
        split.relocations,
        split.case
    );

    for p in 2..=4 {
        let t = tightness_bound(p);
        println!("p = {p}: additive tau* = {}, multiplicative tau* = {}", t.additive, t.multiplicative);
    }
    for upper in [5, 6] {
        let arms = build_arms_instance(2, 3, BalanceSpec::explicit(ratio(0, 1), ratio(upper, 1)))?;
        println!("three arms of 3, upper bound {upper}: {:?}", solve_exact(&arms, &ExactOptions::default()).map(|a| a.labels()));
    }
    Ok(())
}

//! The spider and weighted-star encodings of 3-Partition, solved exactly.

use edgedist::exact::{solve_3partition, solve_exact, ExactOptions};
use edgedist::reductions::{build_3partition_instance, build_weighted_star_instance, PartitionInput, SpiderCenters};

fn main() -> edgedist::Result<()> {
    for values in [vec![4, 5, 5, 5, 5, 6], vec![4, 4, 4, 6, 6, 6]] {
        let input = PartitionInput::new(values.clone())?;
        let spider = build_3partition_instance(&input, SpiderCenters::Hub)?;
        let star = build_weighted_star_instance(&input)?;
        let opts = ExactOptions::unlimited();
        println!(
            "{values:?}: T = {}, triples {:?}, spider {} edges feasible {}, star feasible {}",
            input.target(),
            solve_3partition(&values)?,
            spider.graph().edge_count(),
            solve_exact(&spider, &opts).is_ok(),
            solve_exact(&star, &opts).is_ok()
        );
    }
    Ok(())
}

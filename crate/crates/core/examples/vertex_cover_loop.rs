//! Minimum vertex cover read off compact allocation with node selection.

use edgedist::exact::min_vertex_cover;
use edgedist::reductions::{random_connected_graph, vertex_cover_via_districting};
use edgedist::scalar::ratio;

fn main() -> edgedist::Result<()> {
    for seed in 0..5 {
        let graph = random_connected_graph(6, 3, false, seed);
        println!(
            "seed {seed}: {} edges, districting {}, direct search {}",
            graph.edge_count(),
            vertex_cover_via_districting(&graph, ratio(1, 2))?,
            min_vertex_cover(&graph)?
        );
    }
    Ok(())
}

//! Prints the complexity of every meaningful criterion combination.

use edgedist::model::{classify, VariantSpec};

fn main() {
    let rows = ["", "W", "B", "BW", "N", "NW", "BN", "BNW"];
    let columns = ["O", "IO", "CI", "CIO"];
    println!("{:<5} {:>8} {:>8} {:>8} {:>8}", "", "O", "IO", "IC", "CIO");
    for row in rows {
        let cells: Vec<String> = columns
            .iter()
            .map(|c| {
                let variant: VariantSpec = format!("{row}{c}").parse().unwrap();
                classify(variant).unwrap().complexity.short().to_string()
            })
            .collect();
        println!("{:<5} {:>8} {:>8} {:>8} {:>8}", if row.is_empty() { "-" } else { row }, cells[0], cells[1], cells[2], cells[3]);
    }
    let c = classify("BINO".parse().unwrap()).unwrap();
    println!("\nBINO: {} via {}", c.complexity, c.derivation());
}

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Largest vertex count accepted by [`min_vertex_cover`].
pub const VERTEX_COVER_LIMIT: usize = 20;

/// Size of a minimum vertex cover, by iterative deepening over the
/// two-way branch on the endpoints of an uncovered edge.
pub fn min_vertex_cover<T: Scalar>(graph: &Graph<T>) -> Result<usize> {
    let n = graph.vertex_count();
    if n > VERTEX_COVER_LIMIT {
        return Err(Error::LimitExceeded(format!("vertex cover search is limited to {VERTEX_COVER_LIMIT} vertices, got {n}")));
    }
    let edges: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut chosen = vec![false; n];
    Ok((0..=n).find(|&k| cover_within(&edges, &mut chosen, k)).expect("all vertices always form a cover"))
}

fn cover_within(edges: &[(usize, usize)], chosen: &mut [bool], budget: usize) -> bool {
    let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !chosen[u] && !chosen[v]) else { return true };
    if budget == 0 {
        return false;
    }
    for w in [u, v] {
        chosen[w] = true;
        let found = cover_within(edges, chosen, budget - 1);
        chosen[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// Largest triple count accepted by [`solve_3partition`].
pub const THREE_PARTITION_LIMIT: usize = 5;

/// Splits `values` into triples of equal sum T, or `None`.
///
/// Requires 3m values with m ≤ 5, an integral target T and
/// T/4 < s < T/2 for every value.
pub fn solve_3partition(values: &[u64]) -> Result<Option<Vec<[u64; 3]>>> {
    let target = check_3partition(values)?;
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut used = vec![false; sorted.len()];
    let mut triples = Vec::new();
    Ok(fill_triples(&sorted, &mut used, target, &mut triples).then_some(triples))
}

fn check_3partition(values: &[u64]) -> Result<u64> {
    let malformed = |msg: String| Err(Error::MalformedInstance(msg));
    if values.is_empty() || !values.len().is_multiple_of(3) {
        return malformed(format!("{} values cannot form triples", values.len()));
    }
    let m = values.len() / 3;
    if m > THREE_PARTITION_LIMIT {
        return malformed(format!("{m} triples exceed the oracle limit of {THREE_PARTITION_LIMIT}"));
    }
    let total: u64 = values.iter().sum();
    if !total.is_multiple_of(m as u64) {
        return malformed(format!("sum {total} is not divisible by {m}"));
    }
    let target = total / m as u64;
    if let Some(&s) = values.iter().find(|&&s| 4 * s <= target || 2 * s >= target) {
        return malformed(format!("value {s} violates T/4 < s < T/2 for T = {target}"));
    }
    Ok(target)
}

fn fill_triples(sorted: &[u64], used: &mut [bool], target: u64, triples: &mut Vec<[u64; 3]>) -> bool {
    let Some(first) = used.iter().position(|&u| !u) else { return true };
    used[first] = true;
    for j in first + 1..sorted.len() {
        // Equal values lead to the same subproblem; try each once.
        if used[j] || (j > first + 1 && sorted[j] == sorted[j - 1] && !used[j - 1]) {
            continue;
        }
        let need = match target.checked_sub(sorted[first] + sorted[j]) {
            Some(n) => n,
            None => continue,
        };
        let Some(k) = (j + 1..sorted.len()).find(|&k| !used[k] && sorted[k] == need) else { continue };
        used[j] = true;
        used[k] = true;
        let mut triple = [sorted[first], sorted[j], sorted[k]];
        triple.sort_unstable();
        triples.push(triple);
        if fill_triples(sorted, used, target, triples) {
            return true;
        }
        triples.pop();
        used[j] = false;
        used[k] = false;
    }
    used[first] = false;
    false
}

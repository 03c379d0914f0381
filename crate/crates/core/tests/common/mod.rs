//! Test-side oracles, written independently of the library's solvers.
#![allow(dead_code)]

use edgedist::graph::Graph;
use edgedist::model::{Assignment, Instance};
use edgedist::scalar::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All-pairs vertex distances by Floyd-Warshall.
pub fn floyd(graph: &Graph) -> Vec<Vec<Option<Rational>>> {
    let n = graph.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(r(0));
    }
    for e in graph.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if d[a][b].is_none_or(|cur| e.weight < cur) {
                d[a][b] = Some(e.weight);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| a + b < cur) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// d(v, e) = min(d(v, u), d(v, w)) + alpha * b(e).
pub fn edge_distance(graph: &Graph, table: &[Vec<Option<Rational>>], alpha: Rational, v: usize, e: usize) -> Rational {
    let edge = graph.edge(e);
    let a = table[v][edge.u].expect("connected");
    let b = table[v][edge.v].expect("connected");
    a.min(b) + alpha * edge.weight
}

/// Literal evaluation of the contiguity family for an integral district:
/// some nonempty D inside the district has no allocated boundary edge and
/// does not contain the center.
pub fn c1_violated_bruteforce(graph: &Graph, district: &[usize], center: usize) -> bool {
    let k = district.len();
    assert!(k <= 16, "brute force is exponential");
    (1u32..(1 << k)).any(|mask| {
        let d: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| district[b]).collect();
        let touches_d = |v: usize| d.iter().any(|&e| graph.edge(e).touches(v));
        let boundary_allocated = district
            .iter()
            .filter(|e| !d.contains(e))
            .filter(|&&e| touches_d(graph.edge(e).u) || touches_d(graph.edge(e).v))
            .count();
        let center_inside = usize::from(touches_d(center));
        boundary_allocated + center_inside == 0
    })
}

/// Compares the component contiguity test with the brute force for every
/// district of `assignment` holding at most six edges. Returns
/// (districts compared, disagreements).
pub fn c1_equivalence(graph: &Graph, assignment: &Assignment) -> (usize, usize) {
    let mut compared = 0;
    let mut mismatches = 0;
    for i in 0..assignment.districts() {
        let edges = assignment.district_edges(i);
        if edges.len() > 6 {
            continue;
        }
        let center = assignment.center(i);
        compared += 1;
        if edgedist::model::is_contiguous(graph, &edges, center) == c1_violated_bruteforce(graph, &edges, center) {
            mismatches += 1;
        }
    }
    (compared, mismatches)
}

/// Every integral solution of an instance by plain enumeration, using only
/// the oracle distances, the resolved balance window and the brute-force
/// contiguity check. Returns (optimal value, optimal solutions) or None when
/// infeasible; without compactness every feasible solution has value 0.
pub fn enumerate_integral(instance: &Instance) -> Option<(Rational, Vec<Assignment>)> {
    let graph = instance.graph();
    let (m, p, n) = (graph.edge_count(), instance.districts(), graph.vertex_count());
    let table = floyd(graph);
    let variant = instance.variant();
    let window = instance.bounds();
    let center_sets: Vec<Vec<usize>> = match instance.fixed_centers() {
        Some(c) => vec![c.to_vec()],
        None => (0..n.pow(p as u32))
            .map(|code| (0..p).map(|i| code / n.pow(i as u32) % n).collect())
            .collect(),
    };
    let mut best: Option<(Rational, Vec<Assignment>)> = None;
    for centers in &center_sets {
        for code in 0..p.pow(m as u32) {
            let labels: Vec<usize> = (0..m).map(|e| code / p.pow(e as u32) % p).collect();
            if let Some(w) = &window {
                let ok = (0..p).all(|i| {
                    let load: Rational = (0..m).filter(|&e| labels[e] == i).map(|e| graph.edge(e).weight).sum();
                    w.lower <= load && load <= w.upper
                });
                if !ok {
                    continue;
                }
            }
            if variant.contiguity() {
                let ok = (0..p).all(|i| {
                    let d: Vec<usize> = (0..m).filter(|&e| labels[e] == i).collect();
                    !c1_violated_bruteforce(graph, &d, centers[i])
                });
                if !ok {
                    continue;
                }
            }
            let value = if variant.objective() {
                (0..m).map(|e| edge_distance(graph, &table, instance.alpha(), centers[labels[e]], e)).sum()
            } else {
                r(0)
            };
            let a = Assignment::from_labels(&labels, centers.clone());
            match &mut best {
                Some((v, list)) if *v == value => list.push(a),
                Some((v, _)) if *v < value => {}
                _ => best = Some((value, vec![a])),
            }
        }
    }
    best
}

/// Brute-force minimum vertex cover over all vertex subsets.
pub fn vertex_cover_bruteforce(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    (0u32..(1 << n))
        .filter(|mask| graph.edges().iter().all(|e| mask & (1 << e.u) != 0 || mask & (1 << e.v) != 0))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("the full vertex set is a cover")
}

/// Whether six values split into two triples of equal sum.
pub fn two_triples_bruteforce(values: &[u64]) -> bool {
    assert_eq!(values.len(), 6);
    let total: u64 = values.iter().sum();
    (0u32..64).filter(|m| m.count_ones() == 3).any(|mask| {
        let s: u64 = (0..6).filter(|b| mask & (1 << b) != 0).map(|b| values[b]).sum();
        2 * s == total
    })
}

pub fn random_centers(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Vec<usize> {
    (0..p).map(|_| rng.gen_range(0..n)).collect()
}

/// Connected labeled simple graphs on `n` vertices, by subset enumeration.
pub fn connected_simple_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &pr)| pr).collect();
            Graph::unweighted(n, &edges).unwrap()
        })
        .filter(|g| g.is_connected())
        .collect()
}

pub fn path(vertices: usize) -> Graph {
    Graph::path(vertices)
}

pub fn star(leaves: usize) -> Graph {
    Graph::star(leaves)
}

//! Instance generators for the hardness reductions, the vertex-cover
//! driver, the arms family and seeded random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{solve_exact, ExactOptions};
use crate::graph::Graph;
use crate::model::{objective, BalanceSpec, Criterion, Instance, VariantSpec};
use crate::scalar::{Rational, Scalar};

/// A 3-Partition input in normal form: 3m values with integral target
/// T = Σs/m and T/4 < s < T/2 for every value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInput {
    values: Vec<u64>,
    target: u64,
}

impl PartitionInput {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        let malformed = |msg: String| Err(Error::MalformedInstance(msg));
        if values.is_empty() || !values.len().is_multiple_of(3) {
            return malformed(format!("{} values cannot form triples", values.len()));
        }
        if values.contains(&0) {
            return malformed("values must be positive".into());
        }
        let m = (values.len() / 3) as u64;
        let total: u64 = values.iter().sum();
        if !total.is_multiple_of(m) {
            return malformed(format!("sum {total} is not divisible by {m}"));
        }
        let target = total / m;
        if let Some(&s) = values.iter().find(|&&s| 4 * s <= target || 2 * s >= target) {
            return malformed(format!("value {s} violates T/4 < s < T/2 for T = {target}"));
        }
        Ok(PartitionInput { values, target })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// m = n / 3
    pub fn triples(&self) -> usize {
        self.values.len() / 3
    }

    pub fn target(&self) -> u64 {
        self.target
    }
}

/// How the spider instance treats centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpiderCenters {
    /// Every center fixed at the hub; variant {B, C, I}.
    Hub,
    /// Centers left to node selection; variant {B, C, I, N}.
    Selected,
}

/// Hub vertex 0 with one arm of s_i unit edges per value. Arm i occupies
/// vertices 1 + Σ_{l<i} s_l onwards in order, with its hub edge first.
pub fn spider_graph(arm_lengths: &[u64]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arm_lengths {
        let mut previous = 0;
        for _ in 0..len {
            edges.push((previous, next, Rational::from_int(1)));
            previous = next;
            next += 1;
        }
    }
    Graph::new(next, edges).expect("spider edges are valid by construction")
}

/// Spider reduction: feasible iff the values split into triples of sum T.
pub fn build_3partition_instance(input: &PartitionInput, centers: SpiderCenters) -> Result<Instance> {
    let target = Rational::from_int(input.target as i64);
    let builder = Instance::builder(spider_graph(&input.values), input.triples())
        .balance(BalanceSpec::explicit(target, target));
    match centers {
        SpiderCenters::Hub => builder
            .variant(VariantSpec::of(&[Criterion::Balance, Criterion::Contiguity, Criterion::Integrity]))
            .centers(vec![0; input.triples()])
            .build(),
        SpiderCenters::Selected => builder
            .variant(VariantSpec::of(&[
                Criterion::Balance,
                Criterion::Contiguity,
                Criterion::Integrity,
                Criterion::NodeSelection,
            ]))
            .build(),
    }
}

/// Weighted star reduction: leaf edge i carries weight s_i, all centers at
/// the hub. The variant is {B, I, O, W} with alpha = 0: every distance is 0,
/// so any feasible allocation is optimal and only the balance window decides.
pub fn build_weighted_star_instance(input: &PartitionInput) -> Result<Instance> {
    let edges = input
        .values
        .iter()
        .enumerate()
        .map(|(i, &s)| (0, i + 1, Rational::from_int(s as i64)))
        .collect();
    let target = Rational::from_int(input.target as i64);
    Instance::builder(Graph::new(input.values.len() + 1, edges)?, input.triples())
        .variant(VariantSpec::of(&[
            Criterion::Balance,
            Criterion::Integrity,
            Criterion::Objective,
            Criterion::Weighted,
        ]))
        .balance(BalanceSpec::explicit(target, target))
        .centers(vec![0; input.triples()])
        .build()
}

/// Largest vertex count accepted by [`vertex_cover_via_districting`].
pub const VERTEX_COVER_DRIVER_LIMIT: usize = 10;

/// Smallest p for which integral compact allocation with node selection
/// reaches Σ α·b, the value attained exactly when every edge is adjacent to
/// some center. That p is the minimum vertex cover size.
pub fn vertex_cover_via_districting(graph: &Graph, alpha: Rational) -> Result<usize> {
    if graph.vertex_count() > VERTEX_COVER_DRIVER_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "the vertex-cover driver is limited to {VERTEX_COVER_DRIVER_LIMIT} vertices, got {}",
            graph.vertex_count()
        )));
    }
    if graph.edge_count() == 0 {
        return Ok(0);
    }
    let adjacent_value = graph.edges().iter().fold(Rational::from_int(0), |acc, e| acc + alpha * e.weight);
    let variant = VariantSpec::of(&[Criterion::Integrity, Criterion::NodeSelection, Criterion::Objective]);
    let variant = if graph.is_unit_weighted() { variant } else { variant.with(Criterion::Weighted) };
    for p in 1..=graph.edge_count() {
        let instance = Instance::builder(graph.clone(), p).variant(variant).alpha(alpha).build()?;
        let best = solve_exact(&instance, &ExactOptions::unlimited())?;
        if objective(&instance, &best)? == adjacent_value {
            return Ok(p);
        }
    }
    unreachable!("p = |E| places a center on every edge")
}

/// Hub with p + 1 arms of k unit edges, p districts, variant {B, C, I, N}.
/// The balance window is left to the caller.
pub fn build_arms_instance(p: usize, k: usize, balance: BalanceSpec) -> Result<Instance> {
    if p < 2 || k < 1 {
        return Err(Error::InvalidInstance(format!("arms family needs p >= 2 and k >= 1, got p = {p}, k = {k}")));
    }
    Instance::builder(spider_graph(&vec![k as u64; p + 1]), p)
        .variant(VariantSpec::of(&[
            Criterion::Balance,
            Criterion::Contiguity,
            Criterion::Integrity,
            Criterion::NodeSelection,
        ]))
        .balance(balance)
        .build()
}

/// Random spanning tree (each vertex of a shuffled order hangs off a random
/// earlier one) plus `extra_edges` random non-loop edges, parallels
/// allowed. Weights are uniform in 1..=10 when `weighted`.
pub fn random_connected_graph(n: usize, extra_edges: usize, weighted: bool, seed: u64) -> Graph {
    assert!(n >= 1, "a graph needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = |rng: &mut ChaCha8Rng| Rational::from_int(if weighted { rng.gen_range(1..=10) } else { 1 });
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::with_capacity(n - 1 + extra_edges);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let w = weight(&mut rng);
        edges.push((parent, order[i], w));
    }
    if n >= 2 {
        for _ in 0..extra_edges {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let w = weight(&mut rng);
            edges.push((u, v, w));
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

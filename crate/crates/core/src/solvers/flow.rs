//! Relaxed balanced assignment as a transportation problem.
//!
//! Edges are unit supplies, districts are sinks with capacity Φ_u. The lower
//! bound Φ_l is enforced by splitting every district-to-sink arc into a
//! part of capacity Φ_l with a large negative cost and an ordinary remainder:
//! a minimum-cost maximum flow saturates the cheap parts whenever any
//! feasible allocation does.

use crate::error::{Error, Result};
use crate::model::{Assignment, Criterion, Instance, VariantSpec};
use crate::scalar::Scalar;

struct Arc<T> {
    to: usize,
    cap: i64,
    cost: T,
}

/// Successive shortest paths with Bellman-Ford, so negative arc costs are fine.
struct MinCostFlow<T> {
    arcs: Vec<Arc<T>>,
    out: Vec<Vec<usize>>,
}

impl<T: Scalar> MinCostFlow<T> {
    fn new(nodes: usize) -> Self {
        MinCostFlow { arcs: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: T) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    fn flow_on(&self, arc: usize) -> i64 {
        self.arcs[arc + 1].cap
    }

    fn run(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.out.len();
        let mut total = 0;
        loop {
            let mut dist: Vec<Option<T>> = vec![None; n];
            let mut via: Vec<Option<usize>> = vec![None; n];
            dist[source] = Some(T::zero());
            for _ in 0..n {
                let mut changed = false;
                for u in 0..n {
                    let Some(du) = dist[u] else { continue };
                    for &a in &self.out[u] {
                        let arc = &self.arcs[a];
                        if arc.cap <= 0 {
                            continue;
                        }
                        let candidate = du + arc.cost;
                        let better = match dist[arc.to] {
                            None => true,
                            Some(dv) => candidate < dv && !candidate.approx_eq(dv),
                        };
                        if better {
                            dist[arc.to] = Some(candidate);
                            via[arc.to] = Some(a);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[sink].is_none() {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while let Some(a) = via[v] {
                bottleneck = bottleneck.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = sink;
            while let Some(a) = via[v] {
                self.arcs[a].cap -= bottleneck;
                self.arcs[a ^ 1].cap += bottleneck;
                v = self.arcs[a ^ 1].to;
            }
            total += bottleneck;
        }
    }
}

/// Solves the fractional relaxation of balanced compact assignment with
/// fixed centers on an unweighted graph.
///
/// The transportation polytope is integral, so the returned optimum is an
/// integral vertex.
pub fn solve_fractional_assignment<T: Scalar>(instance: &Instance<T>) -> Result<Assignment<T>> {
    let variant = instance.variant();
    // W is let through so that weighted inputs get the specific error below.
    let allowed = VariantSpec::of(&[Criterion::Balance, Criterion::Integrity, Criterion::Objective, Criterion::Weighted]);
    if !variant.is_subset_of(allowed) || !variant.objective() {
        return Err(Error::UnsupportedVariant {
            solver: "fractional-assignment",
            variant: variant.to_string(),
            reason: "expects balanced compact assignment with fixed centers on an unweighted graph".into(),
        });
    }
    let graph = instance.graph();
    if !graph.is_unit_weighted() {
        return Err(Error::WeightedInstance);
    }
    let centers = instance.fixed_centers().expect("centers are fixed without N").to_vec();
    let edges = graph.edge_count();
    let p = centers.len();
    let (lower, upper) = match instance.bounds() {
        Some(b) => {
            if !b.is_integral() {
                return Err(Error::NonIntegralBounds { lower: b.lower.to_string(), upper: b.upper.to_string() });
            }
            let lower = b.lower.snap().to_f64().max(0.0) as i64;
            let upper = (b.upper.snap().to_f64() as i64).min(edges as i64);
            (lower, upper)
        }
        None => (0, edges as i64),
    };
    if lower > upper || (p as i64) * lower > edges as i64 || (p as i64) * upper < edges as i64 {
        return Err(Error::Infeasible(format!(
            "{edges} edges cannot be split into {p} districts with loads in [{lower}, {upper}]"
        )));
    }

    let big = (0..edges).fold(T::one(), |acc, e| {
        let worst = centers.iter().fold(T::zero(), |m, &c| m.max_of(instance.distance(c, e)));
        acc + worst
    });
    let source = edges + p;
    let sink = source + 1;
    let mut net = MinCostFlow::new(sink + 1);
    for e in 0..edges {
        net.add_arc(source, e, 1, T::zero());
    }
    let mut allocation = vec![vec![0usize; edges]; p];
    for (district, &center) in centers.iter().enumerate() {
        for (e, slot) in allocation[district].iter_mut().enumerate() {
            *slot = net.add_arc(e, edges + district, 1, instance.distance(center, e));
        }
    }
    let mut lower_arcs = Vec::with_capacity(p);
    for district in 0..p {
        if lower > 0 {
            lower_arcs.push(net.add_arc(edges + district, sink, lower, -big));
        }
        if upper > lower {
            net.add_arc(edges + district, sink, upper - lower, T::zero());
        }
    }
    let flow = net.run(source, sink);
    if flow < edges as i64 || lower_arcs.iter().any(|&a| net.flow_on(a) < lower) {
        return Err(Error::Infeasible("no allocation meets the balance bounds".into()));
    }
    let x = allocation
        .iter()
        .map(|row| row.iter().map(|&a| T::from_int(net.flow_on(a))).collect())
        .collect();
    Assignment::new(x, centers)
}

//! Rounding an optimal fractional allocation to an integral one without
//! changing the objective.
//!
//! The rounding graph is bipartite between edge-vertices and
//! center-vertices, with an arc wherever an allocation is strictly
//! fractional. A cycle, or a path between two degree-1 center-vertices,
//! is colored alternately red and blue; shifting ε onto the red arcs and off
//! the blue ones keeps every edge fully allocated and every interior
//! district load unchanged, and at an optimum the objective change is zero.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{objective_unchecked, Assignment, Instance};
use crate::scalar::Scalar;

/// Node of the rounding graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoundingNode {
    Edge(usize),
    Center(usize),
}

/// Strictly fractional allocation x_{district, edge}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalArc<T> {
    pub edge: usize,
    pub district: usize,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingGraph<T> {
    pub edge_vertices: usize,
    pub center_vertices: usize,
    pub arcs: Vec<FractionalArc<T>>,
}

impl<T: Scalar> RoundingGraph<T> {
    pub fn build(assignment: &Assignment<T>) -> Self {
        let mut arcs = Vec::new();
        for edge in 0..assignment.edge_count() {
            for district in 0..assignment.districts() {
                let value = assignment.value(district, edge);
                if !(value.approx_zero() || value.approx_eq(T::one())) {
                    arcs.push(FractionalArc { edge, district, value });
                }
            }
        }
        RoundingGraph {
            edge_vertices: assignment.edge_count(),
            center_vertices: assignment.districts(),
            arcs,
        }
    }

    pub fn degree(&self, node: RoundingNode) -> usize {
        self.arcs.iter().filter(|a| endpoint_matches(a, node)).count()
    }

    fn adjacency(&self) -> BTreeMap<RoundingNode, Vec<usize>> {
        let mut adj: BTreeMap<RoundingNode, Vec<usize>> = BTreeMap::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            adj.entry(RoundingNode::Edge(arc.edge)).or_default().push(i);
            adj.entry(RoundingNode::Center(arc.district)).or_default().push(i);
        }
        adj
    }

    /// Arc indices along the first cycle found by depth-first search, in
    /// traversal order.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut depth: BTreeMap<RoundingNode, usize> = BTreeMap::new();
        let mut parent_arc: BTreeMap<RoundingNode, usize> = BTreeMap::new();
        for &root in adj.keys() {
            if depth.contains_key(&root) {
                continue;
            }
            depth.insert(root, 0);
            let mut stack = vec![(root, 0usize)];
            while let Some(&(node, next)) = stack.last() {
                let arcs = &adj[&node];
                if next == arcs.len() {
                    stack.pop();
                    continue;
                }
                stack.last_mut().unwrap().1 += 1;
                let arc = arcs[next];
                if parent_arc.get(&node) == Some(&arc) {
                    continue;
                }
                let other = other_end(&self.arcs[arc], node);
                match depth.get(&other) {
                    None => {
                        depth.insert(other, depth[&node] + 1);
                        parent_arc.insert(other, arc);
                        stack.push((other, 0));
                    }
                    Some(&d) if d < depth[&node] => {
                        // Back arc: walk tree arcs from `node` up to `other`.
                        let mut cycle = vec![arc];
                        let mut cur = node;
                        while cur != other {
                            let up = parent_arc[&cur];
                            cycle.push(up);
                            cur = other_end(&self.arcs[up], cur);
                        }
                        return Some(cycle);
                    }
                    Some(_) => {}
                }
            }
        }
        None
    }

    /// Arc indices along the tree path between the smallest degree-1
    /// center-vertex and the smallest other degree-1 center-vertex of the
    /// same tree. Assumes the graph is a forest.
    pub fn find_leaf_path(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let leaves: Vec<usize> = (0..self.center_vertices)
            .filter(|&i| adj.get(&RoundingNode::Center(i)).is_some_and(|a| a.len() == 1))
            .collect();
        for &start in &leaves {
            let start_node = RoundingNode::Center(start);
            let mut parent_arc: BTreeMap<RoundingNode, usize> = BTreeMap::new();
            let mut seen = vec![start_node];
            let mut queue = std::collections::VecDeque::from([start_node]);
            while let Some(node) = queue.pop_front() {
                for &arc in &adj[&node] {
                    let other = other_end(&self.arcs[arc], node);
                    if !seen.contains(&other) {
                        seen.push(other);
                        parent_arc.insert(other, arc);
                        queue.push_back(other);
                    }
                }
            }
            let target = leaves.iter().find(|&&i| i != start && seen.contains(&RoundingNode::Center(i)));
            if let Some(&target) = target {
                let mut path = Vec::new();
                let mut cur = RoundingNode::Center(target);
                while cur != start_node {
                    let arc = parent_arc[&cur];
                    path.push(arc);
                    cur = other_end(&self.arcs[arc], cur);
                }
                path.reverse();
                return Some(path);
            }
        }
        None
    }
}

fn endpoint_matches<T>(arc: &FractionalArc<T>, node: RoundingNode) -> bool {
    match node {
        RoundingNode::Edge(e) => arc.edge == e,
        RoundingNode::Center(i) => arc.district == i,
    }
}

fn other_end<T>(arc: &FractionalArc<T>, node: RoundingNode) -> RoundingNode {
    match node {
        RoundingNode::Edge(_) => RoundingNode::Center(arc.district),
        RoundingNode::Center(_) => RoundingNode::Edge(arc.edge),
    }
}

/// Result of [`round_fractional`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingOutcome<T> {
    pub assignment: Assignment<T>,
    pub iterations: usize,
    /// Fractional entry count before the first and after every iteration.
    pub fractional_trace: Vec<usize>,
}

/// Rounds an optimal fractional solution of the balanced relaxation into an
/// integral solution with the same objective.
pub fn round_fractional<T: Scalar>(instance: &Instance<T>, assignment: &Assignment<T>) -> Result<RoundingOutcome<T>> {
    assignment.check_dimensions(instance)?;
    if !instance.graph().is_unit_weighted() {
        return Err(Error::WeightedInstance);
    }
    let bounds = instance.bounds();
    if let Some(b) = bounds {
        if !b.is_integral() {
            return Err(Error::NonIntegralBounds { lower: b.lower.to_string(), upper: b.upper.to_string() });
        }
    }
    let mut x = assignment.clone();
    let limit = instance.districts() * instance.graph().edge_count();
    let mut iterations = 0;
    let mut fractional_trace = vec![x.fractional_count()];
    loop {
        let graph = RoundingGraph::build(&x);
        if graph.arcs.is_empty() {
            break;
        }
        if iterations >= limit {
            return Err(Error::NotOptimalInput(format!("rounding did not finish within {limit} iterations")));
        }
        if let Some(cycle) = graph.find_cycle() {
            let delta = colored_delta(instance, &x, &graph, &cycle);
            if !delta.approx_zero() {
                return Err(Error::NotOptimalInput(format!(
                    "shifting along a rounding cycle changes the objective by {delta} per unit"
                )));
            }
            shift(&mut x, &graph, &cycle, true);
        } else if let Some(path) = graph.find_leaf_path() {
            let delta = colored_delta(instance, &x, &graph, &path);
            if !delta.approx_zero() {
                return Err(Error::NotOptimalInput(format!(
                    "shifting along a rounding path changes the objective by {delta} per unit"
                )));
            }
            let first = graph.arcs[path[0]].district;
            let last = graph.arcs[*path.last().unwrap()].district;
            let mut applied = false;
            for sign in [true, false] {
                let mut trial = x.clone();
                shift(&mut trial, &graph, &path, sign);
                let loads = trial.loads(instance.graph());
                if bounds.is_none_or(|b| b.contains(loads[first]) && b.contains(loads[last])) {
                    x = trial;
                    applied = true;
                    break;
                }
            }
            if !applied {
                return Err(Error::BalanceBreach(format!(
                    "neither direction along the path between districts {first} and {last} keeps both loads in bounds"
                )));
            }
        } else {
            return Err(Error::NotOptimalInput(
                "fractional arcs remain but the rounding graph has neither a cycle nor a leaf path".into(),
            ));
        }
        iterations += 1;
        fractional_trace.push(x.fractional_count());
    }
    debug_assert!(objective_unchecked(instance, &x).approx_eq(objective_unchecked(instance, assignment)));
    Ok(RoundingOutcome { assignment: x, iterations, fractional_trace })
}

/// Σ d over red arcs minus Σ d over blue arcs, red being even positions.
fn colored_delta<T: Scalar>(instance: &Instance<T>, x: &Assignment<T>, graph: &RoundingGraph<T>, arcs: &[usize]) -> T {
    arcs.iter().enumerate().fold(T::zero(), |acc, (pos, &a)| {
        let arc = &graph.arcs[a];
        let d = instance.distance(x.center(arc.district), arc.edge);
        if pos % 2 == 0 {
            acc + d
        } else {
            acc - d
        }
    })
}

/// Moves the maximal ε: onto red arcs and off blue arcs when `red_up`, the
/// reverse otherwise.
fn shift<T: Scalar>(x: &mut Assignment<T>, graph: &RoundingGraph<T>, arcs: &[usize], red_up: bool) {
    let rising = |pos: usize| pos.is_multiple_of(2) == red_up;
    let epsilon = arcs
        .iter()
        .enumerate()
        .map(|(pos, &a)| {
            let v = graph.arcs[a].value;
            if rising(pos) {
                T::one() - v
            } else {
                v
            }
        })
        .fold(T::one(), |m, s| m.min_of(s));
    for (pos, &a) in arcs.iter().enumerate() {
        let arc = &graph.arcs[a];
        let v = x.value(arc.district, arc.edge);
        let next = if rising(pos) { v + epsilon } else { v - epsilon };
        x.set(arc.district, arc.edge, snap_unit(next));
    }
}

fn snap_unit<T: Scalar>(v: T) -> T {
    if v.approx_zero() {
        T::zero()
    } else if v.approx_eq(T::one()) {
        T::one()
    } else {
        v
    }
}

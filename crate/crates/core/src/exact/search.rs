use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::model::{Assignment, Bounds, Instance};
use crate::scalar::Scalar;
use crate::solvers::solve_fixed_centers;

/// Order in which the search assigns edges. Both orders are complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Breadth-first from the first center, so districts grow outwards.
    Adjacency,
    Index,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOptions {
    pub max_edges: usize,
    pub max_districts: usize,
    /// Load, lower-bound, objective-bound and reachability pruning.
    /// Disabling it leaves a plain enumeration with leaf checks.
    pub prune: bool,
    pub edge_order: EdgeOrder,
    /// Worker threads over center choices.
    pub threads: usize,
    /// Ignore the size limits.
    pub force: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { max_edges: 14, max_districts: 4, prune: true, edge_order: EdgeOrder::Adjacency, threads: 1, force: false }
    }
}

impl ExactOptions {
    /// Default options without the size limits.
    pub fn unlimited() -> Self {
        ExactOptions { force: true, ..Self::default() }
    }
}

/// Finds an optimal assignment (any feasible one without compactness) over
/// every center choice and every allocation.
///
/// With node selection centers range over multisets of vertices. When
/// compactness is absent as well the centers only need to touch their
/// district, so they are chosen after the allocation. Integral variants are
/// searched edge by edge; relaxed ones solve one linear program per choice.
///
/// Ties are broken by center-choice index and then by search order, so the
/// result does not depend on the thread count.
pub fn solve_exact<T: Scalar>(instance: &Instance<T>, options: &ExactOptions) -> Result<Assignment<T>> {
    let variant = instance.variant();
    variant.check_meaningful()?;
    let (edges, districts) = (instance.graph().edge_count(), instance.districts());
    if !options.force && (edges > options.max_edges || districts > options.max_districts) {
        return Err(Error::LimitExceeded(format!(
            "{edges} edges and {districts} districts exceed the exact-search limits of {} and {}",
            options.max_edges, options.max_districts
        )));
    }
    let choices = center_choices(instance);
    let shared = Shared { best: Mutex::new(None) };
    let results = run_choices(&choices, options.threads, |index, choice| {
        if variant.integrity() {
            Search::new(instance, choice.as_deref(), options, &shared, index).run()
        } else {
            let centers = choice.as_deref().expect("relaxed variants always carry compactness");
            match solve_fixed_centers(instance, centers) {
                Ok((assignment, objective)) => Ok(Some((objective, assignment))),
                Err(Error::Infeasible(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
    })?;
    let mut best: Option<(T, Assignment<T>)> = None;
    for (objective, assignment) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| objective < *b && !objective.approx_eq(*b)) {
            best = Some((objective, assignment));
        }
    }
    best.map(|(_, a)| a).ok_or_else(|| Error::Infeasible(format!("no feasible assignment for variant {variant}")))
}

type ChoiceResult<T> = Result<Option<(T, Assignment<T>)>>;

fn run_choices<T: Scalar>(
    choices: &[Option<Vec<usize>>],
    threads: usize,
    work: impl Fn(usize, &Option<Vec<usize>>) -> ChoiceResult<T> + Sync,
) -> Result<Vec<Option<(T, Assignment<T>)>>> {
    let threads = threads.max(1).min(choices.len().max(1));
    if threads == 1 {
        return choices.iter().enumerate().map(|(i, c)| work(i, c)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<ChoiceResult<T>>>> = choices.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= choices.len() {
                    break;
                }
                let outcome = work(i, &choices[i]);
                *slots[i].lock().unwrap() = Some(outcome);
            });
        }
    });
    slots.into_iter().map(|s| s.into_inner().unwrap().expect("every choice is processed")).collect()
}

/// Fixed centers, all multisets of vertices, or a single deferred choice.
fn center_choices<T: Scalar>(instance: &Instance<T>) -> Vec<Option<Vec<usize>>> {
    if let Some(fixed) = instance.fixed_centers() {
        return vec![Some(fixed.to_vec())];
    }
    if !instance.variant().objective() {
        return vec![None];
    }
    let n = instance.graph().vertex_count();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(instance.districts());
    multisets(n, instance.districts(), 0, &mut current, &mut out);
    out.into_iter().map(Some).collect()
}

fn multisets(n: usize, size: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for v in from..n {
        current.push(v);
        multisets(n, size, v, current, out);
        current.pop();
    }
}

/// Best (objective, choice index) over all workers.
struct Shared<T> {
    best: Mutex<Option<(T, usize)>>,
}

impl<T: Scalar> Shared<T> {
    /// `true` if a bound of `lower` in choice `index` cannot beat the incumbent.
    fn dominates(&self, lower: T, index: usize) -> bool {
        match *self.best.lock().unwrap() {
            None => false,
            Some((best, best_index)) => {
                (lower > best && !lower.approx_eq(best)) || (lower.approx_eq(best) && index > best_index)
            }
        }
    }

    fn offer(&self, objective: T, index: usize) {
        let mut guard = self.best.lock().unwrap();
        let better = match *guard {
            None => true,
            Some((best, best_index)) => {
                (objective < best && !objective.approx_eq(best)) || (objective.approx_eq(best) && index < best_index)
            }
        };
        if better {
            *guard = Some((objective, index));
        }
    }
}

struct Search<'a, T> {
    instance: &'a Instance<T>,
    centers: Option<&'a [usize]>,
    order: Vec<usize>,
    bounds: Option<Bounds<T>>,
    /// Σ of the remaining edge weights from each depth on.
    suffix_weight: Vec<T>,
    /// Σ of the remaining per-edge minimum distances from each depth on.
    suffix_min: Vec<T>,
    /// Previous district with an identical center, if any.
    twin: Vec<Option<usize>>,
    labels: Vec<Option<usize>>,
    loads: Vec<T>,
    counts: Vec<usize>,
    objective: T,
    best: Option<(T, Vec<usize>)>,
    prune: bool,
    shared: &'a Shared<T>,
    index: usize,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(
        instance: &'a Instance<T>,
        centers: Option<&'a [usize]>,
        options: &ExactOptions,
        shared: &'a Shared<T>,
        index: usize,
    ) -> Self {
        let graph = instance.graph();
        let p = instance.districts();
        let order = match options.edge_order {
            EdgeOrder::Adjacency => graph.edges_by_adjacency(centers.map_or(0, |c| c[0])),
            EdgeOrder::Index => (0..graph.edge_count()).collect(),
        };
        let m = order.len();
        let mut suffix_weight = vec![T::zero(); m + 1];
        let mut suffix_min = vec![T::zero(); m + 1];
        for k in (0..m).rev() {
            let e = order[k];
            suffix_weight[k] = suffix_weight[k + 1] + graph.edge(e).weight;
            let nearest = match centers {
                Some(c) if instance.variant().objective() => {
                    c.iter().map(|&v| instance.distance(v, e)).fold(None, |m: Option<T>, d| Some(m.map_or(d, |m| m.min_of(d))))
                }
                _ => None,
            };
            suffix_min[k] = suffix_min[k + 1] + nearest.unwrap_or_else(T::zero);
        }
        let twin = (0..p)
            .map(|i| match centers {
                Some(c) => (0..i).rev().find(|&j| c[j] == c[i]),
                None => i.checked_sub(1),
            })
            .collect();
        Search {
            instance,
            centers,
            order,
            bounds: instance.bounds(),
            suffix_weight,
            suffix_min,
            twin,
            labels: vec![None; graph.edge_count()],
            loads: vec![T::zero(); p],
            counts: vec![0; p],
            objective: T::zero(),
            best: None,
            prune: options.prune,
            shared,
            index,
        }
    }

    fn run(mut self) -> ChoiceResult<T> {
        self.descend(0);
        let Some((objective, labels)) = self.best.take() else { return Ok(None) };
        let centers = match self.centers {
            Some(c) => c.to_vec(),
            None => self.deferred_centers(&labels),
        };
        Ok(Some((objective, Assignment::from_labels(&labels, centers))))
    }

    fn deferred_centers(&self, labels: &[usize]) -> Vec<usize> {
        let graph = self.instance.graph();
        (0..self.instance.districts())
            .map(|i| {
                (0..labels.len())
                    .filter(|&e| labels[e] == i)
                    .map(|e| graph.edge(e).u.min(graph.edge(e).v))
                    .min()
                    .unwrap_or(0)
            })
            .collect()
    }

    fn has_objective(&self) -> bool {
        self.instance.variant().objective() && self.centers.is_some()
    }

    /// Returns `true` once the search may stop altogether.
    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.leaf();
        }
        let edge = self.order[depth];
        let weight = self.instance.graph().edge(edge).weight;
        let mut candidates: Vec<(usize, T)> = (0..self.instance.districts())
            .map(|i| {
                let d = match self.centers {
                    Some(c) if self.has_objective() => self.instance.distance(c[i], edge),
                    _ => T::zero(),
                };
                (i, d)
            })
            .collect();
        if self.has_objective() {
            candidates.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("distances are comparable"));
        }
        for (district, distance) in candidates {
            if self.counts[district] == 0 {
                if let Some(twin) = self.twin[district] {
                    if self.counts[twin] == 0 {
                        continue;
                    }
                }
            }
            if self.prune {
                if let Some(b) = self.bounds {
                    if !(self.loads[district] + weight).approx_le(b.upper) {
                        continue;
                    }
                }
            }
            self.labels[edge] = Some(district);
            self.loads[district] = self.loads[district] + weight;
            self.counts[district] += 1;
            self.objective = self.objective + distance;
            let stop = if self.prune && self.pruned(depth + 1) { false } else { self.descend(depth + 1) };
            self.objective = self.objective - distance;
            self.counts[district] -= 1;
            self.loads[district] = self.loads[district] - weight;
            self.labels[edge] = None;
            if stop {
                return true;
            }
        }
        false
    }

    fn pruned(&self, depth: usize) -> bool {
        let lower = if self.has_objective() { self.objective + self.suffix_min[depth] } else { T::zero() };
        if let Some((best, _)) = &self.best {
            if lower > *best || lower.approx_eq(*best) {
                return true;
            }
        }
        if self.shared.dominates(lower, self.index) {
            return true;
        }
        if let Some(b) = self.bounds {
            let deficit = self.loads.iter().fold(T::zero(), |acc, &l| acc + (b.lower - l).max_of(T::zero()));
            if !deficit.approx_le(self.suffix_weight[depth]) {
                return true;
            }
        }
        if self.instance.variant().contiguity() {
            return (0..self.instance.districts()).any(|i| self.counts[i] > 0 && !self.can_connect(i));
        }
        false
    }

    /// Whether every edge of `district` can still reach its center (or, with
    /// deferred centers, each other) through its own and unassigned edges.
    fn can_connect(&self, district: usize) -> bool {
        let graph = self.instance.graph();
        let usable = |e: usize| self.labels[e].is_none_or(|l| l == district);
        let start = match self.centers {
            Some(c) => c[district],
            None => {
                let first = (0..self.labels.len()).find(|&e| self.labels[e] == Some(district)).expect("district is nonempty");
                graph.edge(first).u
            }
        };
        let mut seen = vec![false; graph.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in graph.incident_edges(v) {
                if usable(e) {
                    let w = graph.edge(e).other(v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        (0..self.labels.len()).all(|e| self.labels[e] != Some(district) || seen[graph.edge(e).u])
    }

    fn leaf(&mut self) -> bool {
        if let Some(b) = self.bounds {
            if !self.loads.iter().all(|&l| b.contains(l)) {
                return false;
            }
        }
        let labels: Vec<usize> = self.labels.iter().map(|l| l.expect("leaf is fully assigned")).collect();
        if self.instance.variant().contiguity() {
            let graph = self.instance.graph();
            for i in 0..self.instance.districts() {
                let edges: Vec<usize> = (0..labels.len()).filter(|&e| labels[e] == i).collect();
                let ok = match self.centers {
                    Some(c) => crate::model::is_contiguous(graph, &edges, c[i]),
                    None => graph.connected_components(&edges).len() <= 1,
                };
                if !ok {
                    return false;
                }
            }
        }
        let objective = if self.has_objective() { self.objective } else { T::zero() };
        if self.best.as_ref().is_none_or(|(b, _)| objective < *b && !objective.approx_eq(*b)) {
            self.best = Some((objective, labels));
            self.shared.offer(objective, self.index);
        }
        !self.has_objective()
    }
}

//! Undirected weighted multigraphs, shortest-path distances and the edge-set
//! operators used by the contiguity constraints.

use std::collections::{BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::scalar::{positive, Rational, Scalar};

/// An undirected edge. Its identity is its index in [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge<T = Rational> {
    pub u: usize,
    pub v: usize,
    pub weight: T,
}

impl<T> Edge<T> {
    pub fn touches(&self, vertex: usize) -> bool {
        self.u == vertex || self.v == vertex
    }

    pub fn other(&self, vertex: usize) -> usize {
        if self.u == vertex {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph with positive edge weights. Parallel edges are
/// allowed; self-loops are not.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T = Rational> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    incidence: Vec<Vec<usize>>,
}

impl<T: Scalar> Graph<T> {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, T)>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut stored = Vec::with_capacity(edges.len());
        for (index, (u, v, weight)) in edges.into_iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {index} = ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {index} is a self-loop at {u}")));
            }
            if !positive(weight) {
                return Err(Error::InvalidGraph(format!(
                    "edge {index} has non-positive weight {weight}"
                )));
            }
            incidence[u].push(index);
            incidence[v].push(index);
            stored.push(Edge { u, v, weight });
        }
        Ok(Graph { vertex_count, edges: stored, incidence })
    }

    /// Graph with every weight set to one.
    pub fn unweighted(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(vertex_count, edges.iter().map(|&(u, v)| (u, v, T::one())).collect())
    }

    /// Path `0 - 1 - ... - (n-1)` with unit weights.
    pub fn path(vertex_count: usize) -> Self {
        let edges: Vec<_> = (1..vertex_count).map(|v| (v - 1, v)).collect();
        Self::unweighted(vertex_count.max(1), &edges).expect("path is well formed")
    }

    /// Star with hub `0` and leaves `1..=leaves`, unit weights.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::unweighted(leaves + 1, &edges).expect("star is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge<T> {
        &self.edges[index]
    }

    /// Edge indices incident to `vertex` (the set δ(vertex)).
    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.incidence[vertex].len()
    }

    pub fn total_weight(&self) -> T {
        self.edges.iter().fold(T::zero(), |acc, e| acc + e.weight)
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.approx_eq(T::one()))
    }

    /// Same topology with every weight replaced by one.
    pub fn with_unit_weights(&self) -> Self {
        Graph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|e| Edge { u: e.u, v: e.v, weight: T::one() }).collect(),
            incidence: self.incidence.clone(),
        }
    }

    /// Converts weights into another scalar backend.
    pub fn convert<U: Scalar>(&self) -> Graph<U> {
        Graph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge { u: e.u, v: e.v, weight: U::from_rational(e.weight.to_rational()) })
                .collect(),
            incidence: self.incidence.clone(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    fn first_unreachable(&self) -> Option<usize> {
        if self.vertex_count == 0 {
            return None;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(vertex) = queue.pop_front() {
            for &e in &self.incidence[vertex] {
                let next = self.edges[e].other(vertex);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        match self.first_unreachable() {
            Some(vertex) => Err(Error::DisconnectedGraph(vertex, 0)),
            None => Ok(()),
        }
    }

    /// Edges in breadth-first discovery order from `root`, so that every edge
    /// after the first shares a vertex with an earlier one.
    pub fn edges_by_adjacency(&self, root: usize) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.edges.len());
        let mut taken = vec![false; self.edges.len()];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        let roots = std::iter::once(root).chain(0..self.vertex_count);
        for start in roots {
            if start >= self.vertex_count || seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            while let Some(vertex) = queue.pop_front() {
                for &e in &self.incidence[vertex] {
                    if !taken[e] {
                        taken[e] = true;
                        order.push(e);
                    }
                    let next = self.edges[e].other(vertex);
                    if !seen[next] {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        order
    }

    /// The vertex set V_D of an edge subset.
    pub fn incident_vertices(&self, subset: &[usize]) -> BTreeSet<usize> {
        subset.iter().flat_map(|&e| [self.edges[e].u, self.edges[e].v]).collect()
    }

    /// δ(V_D) restricted to edges outside D: every edge not in `subset`
    /// sharing an endpoint with it.
    pub fn boundary_edges(&self, subset: &[usize]) -> Vec<usize> {
        let vertices = self.incident_vertices(subset);
        let inside: BTreeSet<usize> = subset.iter().copied().collect();
        (0..self.edges.len())
            .filter(|e| !inside.contains(e))
            .filter(|&e| vertices.contains(&self.edges[e].u) || vertices.contains(&self.edges[e].v))
            .collect()
    }

    /// Splits `subset` into maximal connected edge sets. Each component is
    /// sorted and components are ordered by their smallest edge index.
    pub fn connected_components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        for &e in subset {
            uf.union(self.edges[e].u, self.edges[e].v);
        }
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = vec![None; self.vertex_count];
        for e in sorted {
            let root = uf.find(self.edges[e].u);
            match root_slot[root] {
                Some(slot) => components[slot].push(e),
                None => {
                    root_slot[root] = Some(components.len());
                    components.push(vec![e]);
                }
            }
        }
        components
    }
}

/// All-pairs shortest-path distances plus the α used for edge distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceTable<T = Rational> {
    vertex_count: usize,
    dist: Vec<T>,
    alpha: T,
}

impl<T: Scalar> DistanceTable<T> {
    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// d_{i,j}
    pub fn between(&self, i: usize, j: usize) -> T {
        self.dist[i * self.vertex_count + j]
    }

    /// d_{v,(j,k)} = min(d_{v,j}, d_{v,k}) + α·b_{(j,k)}
    pub fn to_edge(&self, graph: &Graph<T>, vertex: usize, edge: usize) -> T {
        let e = graph.edge(edge);
        self.between(vertex, e.u).min_of(self.between(vertex, e.v)) + self.alpha * e.weight
    }
}

/// Label-setting shortest paths from every vertex.
pub fn shortest_paths<T: Scalar>(graph: &Graph<T>, alpha: T) -> Result<DistanceTable<T>> {
    if alpha < T::zero() || alpha > T::one() {
        return Err(Error::InvalidInstance(format!("alpha = {alpha} lies outside [0, 1]")));
    }
    let n = graph.vertex_count();
    let mut dist = vec![T::zero(); n * n];
    for source in 0..n {
        let row = single_source(graph, source);
        for (target, value) in row.into_iter().enumerate() {
            match value {
                Some(d) => dist[source * n + target] = d,
                None => return Err(Error::DisconnectedGraph(target, source)),
            }
        }
    }
    Ok(DistanceTable { vertex_count: n, dist, alpha })
}

// Array-based Dijkstra; O(|V|^2) per source is fine at desk scale and needs
// only a partial order on distances.
fn single_source<T: Scalar>(graph: &Graph<T>, source: usize) -> Vec<Option<T>> {
    let n = graph.vertex_count();
    let mut best: Vec<Option<T>> = vec![None; n];
    let mut settled = vec![false; n];
    best[source] = Some(T::zero());
    loop {
        let next = (0..n)
            .filter(|&v| !settled[v])
            .filter_map(|v| best[v].map(|d| (v, d)))
            .fold(None, |acc: Option<(usize, T)>, (v, d)| match acc {
                Some((_, bd)) if bd <= d => acc,
                _ => Some((v, d)),
            });
        let Some((vertex, d)) = next else { break };
        settled[vertex] = true;
        for &e in graph.incident_edges(vertex) {
            let edge = graph.edge(e);
            let other = edge.other(vertex);
            let candidate = d + edge.weight;
            if best[other].is_none_or(|cur| candidate < cur) {
                best[other] = Some(candidate);
            }
        }
    }
    best
}

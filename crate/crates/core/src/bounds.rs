//! Balanced contiguous two-district partitions, and the tolerance at which
//! the arms family stops admitting one.
//!
//! Every connected graph with at least two edges splits into two contiguous
//! districts whose edge counts both lie in [|E|/3, 2|E|/3]. The graph is
//! first turned into a tree over the same edges, then a cut-point is moved
//! until no component hanging off it is too large, and whole components are
//! grouped into the first district.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Assignment;
use crate::scalar::{ratio, Rational, Scalar};

/// The graph's edges re-hung as a tree. Tree edge `e` is original edge `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryTree<T = Rational> {
    pub tree: Graph<T>,
    /// Original edge index to tree edge index.
    pub edge_map: Vec<usize>,
    /// Added vertices, numbered from the original vertex count upwards.
    pub auxiliary_vertices: Vec<usize>,
    /// Original vertex behind every tree vertex; auxiliary vertices map to
    /// the original endpoint their edge does not hang from.
    pub origin: Vec<usize>,
}

/// Keeps edges that join two components; a cycle-closing edge (u, v) is
/// replaced by (min(u, v), v') for a fresh vertex v'.
pub fn build_auxiliary_tree<T: Scalar>(graph: &Graph<T>) -> Result<AuxiliaryTree<T>> {
    graph.ensure_connected()?;
    let n = graph.vertex_count();
    let mut components = UnionFind::<usize>::new(n);
    let mut edges = Vec::with_capacity(graph.edge_count());
    let mut auxiliary_vertices = Vec::new();
    let mut origin: Vec<usize> = (0..n).collect();
    for edge in graph.edges() {
        if components.union(edge.u, edge.v) {
            edges.push((edge.u, edge.v, edge.weight));
        } else {
            let fresh = n + auxiliary_vertices.len();
            auxiliary_vertices.push(fresh);
            origin.push(edge.u.max(edge.v));
            edges.push((edge.u.min(edge.v), fresh, edge.weight));
        }
    }
    let tree = Graph::new(n + auxiliary_vertices.len(), edges)?;
    Ok(AuxiliaryTree { tree, edge_map: (0..graph.edge_count()).collect(), auxiliary_vertices, origin })
}

/// Which step of the construction produced the first district.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionCase {
    /// One component at the cut-point already had a balanced size.
    SingleComponent,
    /// Several small components were grouped.
    Accumulated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoDistrictPartition<T = Rational> {
    /// Integral two-district assignment; both centers sit at the cut-point.
    pub assignment: Assignment<T>,
    /// Cut-point as an original vertex.
    pub cut_point: usize,
    /// Case-1 moves of the cut-point.
    pub relocations: usize,
    pub case: PartitionCase,
}

impl<T: Scalar> TwoDistrictPartition<T> {
    /// Edge counts of the two districts.
    pub fn sizes(&self) -> [usize; 2] {
        [self.assignment.district_edges(0).len(), self.assignment.district_edges(1).len()]
    }
}

/// Splits a connected graph into two contiguous districts whose edge counts
/// lie in [⌈|E|/3⌉, ⌊2|E|/3⌋]. Weights are ignored: balance counts edges.
pub fn two_district_partition<T: Scalar>(graph: &Graph<T>) -> Result<TwoDistrictPartition<T>> {
    let m = graph.edge_count();
    if m < 2 {
        return Err(Error::TooFewEdges(m));
    }
    let aux = build_auxiliary_tree(graph)?;
    let tree = &aux.tree;
    let mut cut = (0..tree.vertex_count()).max_by_key(|&v| (tree.degree(v), std::cmp::Reverse(v))).expect("tree has vertices");
    let mut relocations = 0;
    let mut branches = hanging_components(tree, cut);
    // Case 1: walk into the single oversized component.
    while let Some(big) = branches.iter().find(|b| 3 * b.len() > 2 * m) {
        let step = tree.edge(big[0]).other(cut);
        let largest = big.len();
        cut = step;
        branches = hanging_components(tree, cut);
        relocations += 1;
        debug_assert!(branches.iter().all(|b| b.len() < largest));
    }
    let balanced = |size: usize| 3 * size >= m && 3 * size <= 2 * m;
    let (first, case): (Vec<usize>, PartitionCase) = match branches.iter().find(|b| balanced(b.len())) {
        Some(b) => (b.clone(), PartitionCase::SingleComponent),
        None => {
            let mut group = Vec::new();
            for b in &branches {
                group.extend_from_slice(b);
                if 3 * group.len() >= m {
                    break;
                }
            }
            (group, PartitionCase::Accumulated)
        }
    };
    let mut labels = vec![1; m];
    for &tree_edge in &first {
        let original = aux.edge_map.iter().position(|&t| t == tree_edge).expect("edge map is a bijection");
        labels[original] = 0;
    }
    let cut_point = aux.origin[cut];
    debug_assert!(cut < graph.vertex_count(), "the cut-point never lands on an auxiliary leaf");
    Ok(TwoDistrictPartition {
        assignment: Assignment::from_labels(&labels, vec![cut_point, cut_point]),
        cut_point,
        relocations,
        case,
    })
}

/// Edge sets of the subtrees hanging off `cut`, each starting with the edge
/// incident to `cut`, ordered by that edge's index.
fn hanging_components<T: Scalar>(tree: &Graph<T>, cut: usize) -> Vec<Vec<usize>> {
    let mut roots: Vec<usize> = tree.incident_edges(cut).to_vec();
    roots.sort_unstable();
    roots
        .into_iter()
        .map(|root| {
            let mut component = vec![root];
            let mut stack = vec![(tree.edge(root).other(cut), root)];
            while let Some((v, via)) = stack.pop() {
                for &e in tree.incident_edges(v) {
                    if e != via {
                        component.push(e);
                        stack.push((tree.edge(e).other(v), e));
                    }
                }
            }
            component
        })
        .collect()
}

/// Tolerances at which the p + 1 arms family loses all feasible solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightnessBound {
    /// Additive τ below which no solution exists.
    pub additive: Rational,
    /// Multiplicative τ above which no solution exists.
    pub multiplicative: Rational,
}

/// In the arms family with p districts some district holds at least two
/// arms (2k edges) and some holds at most one (k edges), while
/// b̄ = (p + 1)k / p. The additive window needs (1 + τ)b̄ ≥ 2k and
/// (1 - τ)b̄ ≤ k; the multiplicative one needs b̄/τ ≥ 2k and τb̄ ≤ k.
pub fn tightness_bound(p: usize) -> TightnessBound {
    assert!(p >= 2, "the arms family needs at least two districts");
    let p = p as i64;
    let additive = ratio(p - 1, p + 1).max(ratio(1, p + 1));
    let multiplicative = ratio(p, p + 1).min(ratio(p + 1, 2 * p));
    TightnessBound { additive, multiplicative }
}

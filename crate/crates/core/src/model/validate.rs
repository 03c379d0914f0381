//! Constraint checking for every criterion group.
//!
//! Contiguity uses the component characterisation: a district satisfies
//! every cut of the exponential C1 family iff its edge set is empty or forms a
//! single connected component whose vertex set contains the district center.
//! Any violating subset D is a union of components that miss the center, so
//! reporting those components is exhaustive.

use std::fmt;

use crate::error::Result;
use crate::model::assignment::Assignment;
use crate::model::instance::Instance;
use crate::scalar::{sum, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintGroup {
    S1,
    S2,
    B1,
    B2,
    C1,
    I1,
    N1,
}

impl fmt::Display for ConstraintGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Edge(usize),
    District(usize),
    /// Edge subset D isolated from the district center.
    EdgeSet(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub group: ConstraintGroup,
    pub district: Option<usize>,
    pub witness: Witness,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)?;
        if let Some(d) = self.district {
            write!(f, " district {d}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Violated constraints; empty exactly when the assignment is feasible.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of_group(&self, group: ConstraintGroup) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.group == group)
    }

    fn push(&mut self, group: ConstraintGroup, district: Option<usize>, witness: Witness, detail: String) {
        self.violations.push(Violation { group, district, witness, detail });
    }
}

/// Checks the structural constraints plus every group active in the
/// instance's variant. Fails only on dimension mismatches.
pub fn validate<T: Scalar>(instance: &Instance<T>, assignment: &Assignment<T>) -> Result<ViolationReport> {
    assignment.check_dimensions(instance)?;
    let graph = instance.graph();
    let variant = instance.variant();
    let mut report = ViolationReport::default();

    for edge in 0..graph.edge_count() {
        let column: Vec<T> = (0..instance.districts()).map(|i| assignment.value(i, edge)).collect();
        if let Some(i) = column.iter().position(|&x| x < T::zero() && !x.approx_zero()) {
            report.push(
                ConstraintGroup::S1,
                Some(i),
                Witness::Edge(edge),
                format!("edge {edge} has negative allocation {}", column[i]),
            );
        }
        let total = sum(column.iter().copied());
        if !total.approx_eq(T::one()) {
            report.push(
                ConstraintGroup::S1,
                None,
                Witness::Edge(edge),
                format!("edge {edge} is allocated {total} in total instead of 1"),
            );
        }
    }

    for (district, &center) in assignment.centers().iter().enumerate() {
        if center >= graph.vertex_count() {
            report.push(
                ConstraintGroup::S2,
                Some(district),
                Witness::District(district),
                format!("center {center} is not a vertex"),
            );
        } else if let Some(fixed) = instance.fixed_centers() {
            if fixed[district] != center {
                report.push(
                    ConstraintGroup::S2,
                    Some(district),
                    Witness::District(district),
                    format!("center {center} differs from the fixed center {}", fixed[district]),
                );
            }
        }
    }

    if variant.integrity() {
        for district in 0..instance.districts() {
            for edge in 0..graph.edge_count() {
                let x = assignment.value(district, edge);
                if !(x.approx_zero() || x.approx_eq(T::one())) {
                    report.push(
                        ConstraintGroup::I1,
                        Some(district),
                        Witness::Edge(edge),
                        format!("edge {edge} has fractional allocation {x}"),
                    );
                }
            }
        }
    }

    if let Some(bounds) = instance.bounds() {
        for (district, load) in assignment.loads(graph).into_iter().enumerate() {
            if !load.approx_le(bounds.upper) {
                report.push(
                    ConstraintGroup::B1,
                    Some(district),
                    Witness::District(district),
                    format!("load {load} exceeds upper bound {}", bounds.upper),
                );
            }
            if !bounds.lower.approx_le(load) {
                report.push(
                    ConstraintGroup::B2,
                    Some(district),
                    Witness::District(district),
                    format!("load {load} is below lower bound {}", bounds.lower),
                );
            }
        }
    }

    if variant.contiguity() {
        for district in 0..instance.districts() {
            let center = assignment.center(district);
            for component in isolated_components(instance, assignment, district, center) {
                let detail = format!("edges {component:?} are cut off from center {center}");
                report.push(ConstraintGroup::C1, Some(district), Witness::EdgeSet(component), detail);
            }
        }
    }

    Ok(report)
}

/// Components of the fully allocated edges of `district` whose vertex set
/// misses `center`.
pub fn isolated_components<T: Scalar>(
    instance: &Instance<T>,
    assignment: &Assignment<T>,
    district: usize,
    center: usize,
) -> Vec<Vec<usize>> {
    let graph = instance.graph();
    let edges = assignment.district_edges(district);
    graph
        .connected_components(&edges)
        .into_iter()
        .filter(|component| !component.iter().any(|&e| graph.edge(e).touches(center)))
        .collect()
}

/// Component test for a single district edge set.
pub fn is_contiguous<T: Scalar>(graph: &crate::graph::Graph<T>, edges: &[usize], center: usize) -> bool {
    let components = graph.connected_components(edges);
    match components.as_slice() {
        [] => true,
        [only] => only.iter().any(|&e| graph.edge(e).touches(center)),
        _ => false,
    }
}

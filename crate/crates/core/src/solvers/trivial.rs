use crate::error::{Error, Result};
use crate::model::{Assignment, Criterion, Instance, VariantSpec};
use crate::scalar::Scalar;

/// Puts every edge into the first district.
///
/// Without balance or compactness this is always feasible: the whole
/// connected graph is one contiguous district and the remaining districts
/// stay empty. With node selection the first center is the smallest vertex
/// incident to an edge and the others sit at vertex 0.
pub fn solve_trivial<T: Scalar>(instance: &Instance<T>) -> Result<Assignment<T>> {
    let variant = instance.variant();
    let allowed = VariantSpec::of(&[Criterion::Contiguity, Criterion::Integrity, Criterion::NodeSelection, Criterion::Weighted]);
    if !variant.is_subset_of(allowed) || !variant.integrity() {
        return Err(Error::UnsupportedVariant {
            solver: "trivial",
            variant: variant.to_string(),
            reason: "only applies without balance and compactness".into(),
        });
    }
    let graph = instance.graph();
    let centers = match instance.fixed_centers() {
        Some(fixed) => fixed.to_vec(),
        None => {
            let first = graph.edges().iter().map(|e| e.u.min(e.v)).min().unwrap_or(0);
            let mut centers = vec![0; instance.districts()];
            centers[0] = first;
            centers
        }
    };
    Ok(Assignment::from_labels(&vec![0; graph.edge_count()], centers))
}

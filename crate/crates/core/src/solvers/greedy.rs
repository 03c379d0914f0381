use crate::error::{Error, Result};
use crate::model::{Assignment, Criterion, Instance, VariantSpec};
use crate::scalar::Scalar;

/// Allocates every edge to its nearest center, breaking ties towards the
/// smallest district index.
///
/// Optimal for integral allocation with compactness, and the nearest-center
/// districts are always contiguous, so the same output solves the
/// contiguous variants with or without weights.
pub fn greedy_assign<T: Scalar>(instance: &Instance<T>) -> Result<Assignment<T>> {
    let variant = instance.variant();
    let allowed = VariantSpec::of(&[Criterion::Contiguity, Criterion::Integrity, Criterion::Objective, Criterion::Weighted]);
    if !variant.is_subset_of(allowed) || !variant.integrity() {
        return Err(Error::UnsupportedVariant {
            solver: "greedy",
            variant: variant.to_string(),
            reason: "requires integral allocation and fixed centers, without balance".into(),
        });
    }
    let centers = instance
        .fixed_centers()
        .expect("centers are fixed whenever N is inactive")
        .to_vec();
    let labels: Vec<usize> = (0..instance.graph().edge_count())
        .map(|edge| nearest_district(instance, &centers, edge))
        .collect();
    Ok(Assignment::from_labels(&labels, centers))
}

fn nearest_district<T: Scalar>(instance: &Instance<T>, centers: &[usize], edge: usize) -> usize {
    let mut best = 0;
    let mut best_distance = instance.distance(centers[0], edge);
    for (district, &center) in centers.iter().enumerate().skip(1) {
        let d = instance.distance(center, edge);
        if d < best_distance && !d.approx_eq(best_distance) {
            best = district;
            best_distance = d;
        }
    }
    best
}

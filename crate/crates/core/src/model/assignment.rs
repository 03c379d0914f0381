use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::instance::Instance;
use crate::scalar::{Rational, Scalar};

/// Allocation matrix `x[district][edge]` together with the resolved center
/// of every district.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T = Rational> {
    x: Vec<Vec<T>>,
    centers: Vec<usize>,
}

impl<T: Scalar> Assignment<T> {
    pub fn new(x: Vec<Vec<T>>, centers: Vec<usize>) -> Result<Self> {
        if x.len() != centers.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} allocation rows but {} centers",
                x.len(),
                centers.len()
            )));
        }
        if let Some(width) = x.first().map(Vec::len) {
            if x.iter().any(|row| row.len() != width) {
                return Err(Error::DimensionMismatch("allocation rows differ in length".into()));
            }
        }
        Ok(Assignment { x, centers })
    }

    /// Integral assignment where edge `e` goes to district `labels[e]`.
    pub fn from_labels(labels: &[usize], centers: Vec<usize>) -> Self {
        let mut x = vec![vec![T::zero(); labels.len()]; centers.len()];
        for (edge, &district) in labels.iter().enumerate() {
            x[district][edge] = T::one();
        }
        Assignment { x, centers }
    }

    pub fn districts(&self) -> usize {
        self.centers.len()
    }

    pub fn edge_count(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn center(&self, district: usize) -> usize {
        self.centers[district]
    }

    pub fn value(&self, district: usize, edge: usize) -> T {
        self.x[district][edge]
    }

    pub fn set(&mut self, district: usize, edge: usize, value: T) {
        self.x[district][edge] = value;
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.x
    }

    pub fn is_integral(&self) -> bool {
        self.x.iter().flatten().all(|v| v.approx_zero() || v.approx_eq(T::one()))
    }

    /// Number of strictly fractional entries.
    pub fn fractional_count(&self) -> usize {
        self.x.iter().flatten().filter(|v| !(v.approx_zero() || v.approx_eq(T::one()))).count()
    }

    /// District of every edge, when the assignment is integral and every
    /// edge is allocated exactly once.
    pub fn labels(&self) -> Option<Vec<usize>> {
        (0..self.edge_count())
            .map(|e| {
                let mut owners = (0..self.districts()).filter(|&i| self.x[i][e].approx_eq(T::one()));
                let owner = owners.next()?;
                let rest_zero = (0..self.districts()).all(|i| i == owner || self.x[i][e].approx_zero());
                (owners.next().is_none() && rest_zero).then_some(owner)
            })
            .collect()
    }

    /// Edges fully allocated to `district`.
    pub fn district_edges(&self, district: usize) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.x[district][e].approx_eq(T::one())).collect()
    }

    /// Σ_e b_e · x_{i,e} for every district.
    pub fn loads(&self, graph: &Graph<T>) -> Vec<T> {
        self.x
            .iter()
            .map(|row| {
                row.iter().zip(graph.edges()).fold(T::zero(), |acc, (&x, e)| acc + x * e.weight)
            })
            .collect()
    }

    pub fn convert<U: Scalar>(&self) -> Assignment<U> {
        Assignment {
            x: self
                .x
                .iter()
                .map(|row| row.iter().map(|v| U::from_rational(v.to_rational())).collect())
                .collect(),
            centers: self.centers.clone(),
        }
    }

    pub(crate) fn check_dimensions(&self, instance: &Instance<T>) -> Result<()> {
        if self.districts() != instance.districts() {
            return Err(Error::DimensionMismatch(format!(
                "assignment has {} districts, instance has {}",
                self.districts(),
                instance.districts()
            )));
        }
        if self.x.iter().any(|row| row.len() != instance.graph().edge_count()) {
            return Err(Error::DimensionMismatch(format!(
                "assignment rows must have {} entries",
                instance.graph().edge_count()
            )));
        }
        Ok(())
    }
}

/// Compactness objective Σ_i Σ_e d_{c_i, e} · x_{i,e}; valid for fractional
/// allocations too.
pub fn objective<T: Scalar>(instance: &Instance<T>, assignment: &Assignment<T>) -> Result<T> {
    assignment.check_dimensions(instance)?;
    if let Some(&bad) = assignment.centers().iter().find(|&&c| c >= instance.graph().vertex_count()) {
        return Err(Error::DimensionMismatch(format!("center {bad} is not a vertex")));
    }
    Ok(objective_unchecked(instance, assignment))
}

pub(crate) fn objective_unchecked<T: Scalar>(instance: &Instance<T>, assignment: &Assignment<T>) -> T {
    let mut total = T::zero();
    for (district, row) in assignment.rows().iter().enumerate() {
        let center = assignment.center(district);
        for (edge, &x) in row.iter().enumerate() {
            if !x.is_zero() {
                total = total + instance.distance(center, edge) * x;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::variant::VariantSpec;
    use crate::scalar::ratio;

    fn r(n: i64) -> Rational {
        ratio(n, 1)
    }

    fn io_instance(graph: Graph, centers: Vec<usize>) -> Instance {
        Instance::builder(graph, centers.len())
            .variant("IO".parse::<VariantSpec>().unwrap())
            .centers(centers)
            .build()
            .unwrap()
    }

    #[test]
    fn star_center_has_zero_objective() {
        let inst = io_instance(Graph::star(4), vec![0]);
        let a = Assignment::from_labels(&[0, 0, 0, 0], vec![0]);
        assert_eq!(objective(&inst, &a).unwrap(), r(0));
    }

    #[test]
    fn path_with_end_centers() {
        let inst = io_instance(Graph::path(3), vec![0, 2]);
        let a = Assignment::from_labels(&[0, 1], vec![0, 2]);
        assert_eq!(objective(&inst, &a).unwrap(), r(0));
    }

    #[test]
    fn path_single_center_sums_distances() {
        let inst = io_instance(Graph::path(4), vec![0]);
        let a = Assignment::from_labels(&[0, 0, 0], vec![0]);
        assert_eq!(objective(&inst, &a).unwrap(), r(3));
    }

    #[test]
    fn fractional_objective_is_linear() {
        let inst = io_instance(Graph::path(4), vec![0, 3]);
        let half = ratio(1, 2);
        let a = Assignment::new(
            vec![vec![r(1), half, r(0)], vec![r(0), half, r(1)]],
            vec![0, 3],
        )
        .unwrap();
        assert_eq!(objective(&inst, &a).unwrap(), r(1));
        assert!(!a.is_integral());
        assert_eq!(a.fractional_count(), 2);
        assert_eq!(a.labels(), None);
    }

    #[test]
    fn labels_round_trip() {
        let a: Assignment = Assignment::from_labels(&[1, 0, 1], vec![4, 5]);
        assert_eq!(a.labels(), Some(vec![1, 0, 1]));
        assert_eq!(a.district_edges(1), vec![0, 2]);
    }

    #[test]
    fn mismatched_dimensions_are_reported() {
        let inst = io_instance(Graph::path(4), vec![0, 3]);
        let a: Assignment = Assignment::from_labels(&[0, 1], vec![0, 3]);
        assert!(matches!(objective(&inst, &a), Err(Error::DimensionMismatch(_))));
    }
}

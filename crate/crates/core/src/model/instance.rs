use crate::error::{Error, Result};
use crate::graph::{shortest_paths, DistanceTable, Graph};
use crate::model::balance::{resolve_bounds, BalanceSpec, Bounds};
use crate::model::variant::VariantSpec;
use crate::scalar::{Rational, Scalar};

/// A districting instance: graph, district count, active criteria and their
/// parameters. Distances are computed eagerly on construction.
#[derive(Debug, Clone)]
pub struct Instance<T = Rational> {
    graph: Graph<T>,
    districts: usize,
    variant: VariantSpec,
    balance: Option<BalanceSpec<T>>,
    centers: Option<Vec<usize>>,
    alpha: T,
    distances: DistanceTable<T>,
    bounds: Option<Bounds<T>>,
}

/// Builder returned by [`Instance::builder`].
#[derive(Debug, Clone)]
pub struct InstanceBuilder<T = Rational> {
    graph: Graph<T>,
    districts: usize,
    variant: VariantSpec,
    balance: Option<BalanceSpec<T>>,
    centers: Option<Vec<usize>>,
    alpha: T,
}

impl<T: Scalar> InstanceBuilder<T> {
    pub fn variant(mut self, variant: VariantSpec) -> Self {
        self.variant = variant;
        self
    }

    pub fn balance(mut self, balance: BalanceSpec<T>) -> Self {
        self.balance = Some(balance);
        self
    }

    pub fn centers(mut self, centers: Vec<usize>) -> Self {
        self.centers = Some(centers);
        self
    }

    pub fn maybe_balance(mut self, balance: Option<BalanceSpec<T>>) -> Self {
        self.balance = balance;
        self
    }

    pub fn maybe_centers(mut self, centers: Option<Vec<usize>>) -> Self {
        self.centers = centers;
        self
    }

    pub fn alpha(mut self, alpha: T) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn build(self) -> Result<Instance<T>> {
        let InstanceBuilder { graph, districts, variant, balance, centers, alpha } = self;
        variant.check_meaningful()?;
        let invalid = |msg: String| Err(Error::InvalidInstance(msg));
        if districts == 0 || districts > graph.edge_count() {
            return invalid(format!(
                "district count {districts} must lie in 1..={}",
                graph.edge_count()
            ));
        }
        if variant.balance() != balance.is_some() {
            return invalid(format!(
                "a balance specification must be given exactly when B is active (variant {variant})"
            ));
        }
        match (&centers, variant.node_selection()) {
            (Some(_), true) => {
                return invalid("fixed centers conflict with node center selection (N)".into())
            }
            (None, false) => {
                return invalid("fixed centers are required when N is not active".into())
            }
            (Some(c), false) => {
                if c.len() != districts {
                    return invalid(format!("{} centers given for {districts} districts", c.len()));
                }
                if let Some(&bad) = c.iter().find(|&&v| v >= graph.vertex_count()) {
                    return invalid(format!("center {bad} is not a vertex"));
                }
            }
            (None, true) => {}
        }
        if !variant.weighted() && !graph.is_unit_weighted() {
            return invalid(format!("variant {variant} is unweighted but some edge weight differs from 1"));
        }
        let distances = shortest_paths(&graph, alpha)?;
        let integral = variant.integrity() && !variant.weighted();
        let bounds = balance
            .as_ref()
            .map(|b| resolve_bounds(b, graph.total_weight(), districts, integral))
            .transpose()?;
        Ok(Instance { graph, districts, variant, balance, centers, alpha, distances, bounds })
    }
}

impl<T: Scalar> Instance<T> {
    /// Starts an instance with no criteria, α = 0, and no centers.
    pub fn builder(graph: Graph<T>, districts: usize) -> InstanceBuilder<T> {
        InstanceBuilder {
            graph,
            districts,
            variant: VariantSpec::empty(),
            balance: None,
            centers: None,
            alpha: T::zero(),
        }
    }

    pub fn graph(&self) -> &Graph<T> {
        &self.graph
    }

    pub fn districts(&self) -> usize {
        self.districts
    }

    pub fn variant(&self) -> VariantSpec {
        self.variant
    }

    pub fn balance(&self) -> Option<&BalanceSpec<T>> {
        self.balance.as_ref()
    }

    /// Fixed centers, present exactly when N is inactive.
    pub fn fixed_centers(&self) -> Option<&[usize]> {
        self.centers.as_deref()
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn distances(&self) -> &DistanceTable<T> {
        &self.distances
    }

    /// Resolved load window; `None` without B.
    pub fn bounds(&self) -> Option<Bounds<T>> {
        self.bounds
    }

    /// d_{vertex, edge}
    pub fn distance(&self, vertex: usize, edge: usize) -> T {
        self.distances.to_edge(&self.graph, vertex, edge)
    }

    /// A copy under another variant, keeping every parameter that still applies.
    pub fn with_variant(&self, variant: VariantSpec) -> Result<Instance<T>> {
        Instance::builder(self.graph.clone(), self.districts)
            .variant(variant)
            .maybe_balance(if variant.balance() { self.balance } else { None })
            .maybe_centers(if variant.node_selection() { None } else { self.centers.clone() })
            .alpha(self.alpha)
            .build()
    }

    /// Re-expresses the instance in another scalar backend.
    pub fn convert<U: Scalar>(&self) -> Result<Instance<U>> {
        Instance::builder(self.graph.convert(), self.districts)
            .variant(self.variant)
            .maybe_balance(self.balance.map(|b| b.convert()))
            .maybe_centers(self.centers.clone())
            .alpha(U::from_rational(self.alpha.to_rational()))
            .build()
    }
}

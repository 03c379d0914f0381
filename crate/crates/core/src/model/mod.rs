//! The districting model: criteria, balance windows, instances, assignments,
//! constraint validation and complexity classification.

mod assignment;
mod balance;
mod classify;
mod instance;
mod validate;
mod variant;

pub use assignment::{objective, Assignment};
pub(crate) use assignment::objective_unchecked;
pub use balance::{resolve_bounds, BalanceSpec, Bounds};
pub use classify::{classify, Argument, Classification, Complexity};
pub use instance::{Instance, InstanceBuilder};
pub use validate::{
    is_contiguous, isolated_components, validate, ConstraintGroup, Violation, ViolationReport, Witness,
};
pub use variant::{Criterion, VariantSpec};

//! Dense two-phase simplex with Bland's rule.
//!
//! Sized for desk-scale models; with [`Rational`](crate::scalar::Rational)
//! every pivot is exact.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub terms: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub objective: T,
    pub values: Vec<T>,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    cost: Vec<T>,
    basis: Vec<usize>,
    width: usize,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, row: usize) -> T {
        self.rows[row][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v = (*v / p).snap_zero();
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            eliminate(other, &pivot_row, col);
        }
        eliminate(&mut self.cost, &pivot_row, col);
        self.basis[row] = col;
    }

    /// Runs simplex iterations over the allowed columns until optimal.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        loop {
            let entering = (0..self.width)
                .find(|&j| allowed(j) && self.cost[j] < T::zero() && !self.cost[j].approx_zero());
            let Some(col) = entering else { return Ok(()) };
            let mut leaving: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a <= T::zero() || a.approx_zero() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((best, best_ratio)) => {
                        let better = ratio < best_ratio && !ratio.approx_eq(best_ratio);
                        let tie = ratio.approx_eq(best_ratio) && self.basis[r] < self.basis[best];
                        if better || tie {
                            Some((r, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((row, _)) = leaving else { return Err(Error::Unbounded) };
            self.pivot(row, col);
        }
    }
}

fn eliminate<T: Scalar>(target: &mut [T], pivot_row: &[T], col: usize) {
    let factor = target[col];
    if factor.is_zero() {
        return;
    }
    for (t, &p) in target.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *t = (*t - factor * p).snap_zero();
        }
    }
}

trait SnapZero {
    fn snap_zero(self) -> Self;
}

impl<T: Scalar> SnapZero for T {
    fn snap_zero(self) -> Self {
        if !T::EXACT && self.approx_zero() {
            T::zero()
        } else {
            self
        }
    }
}

/// Minimises `objective · x` subject to `constraints` and `x >= 0`.
pub fn minimize<T: Scalar>(objective: &[T], constraints: &[Constraint<T>]) -> Result<LpSolution<T>> {
    let n = objective.len();
    let m = constraints.len();
    let normalized: Vec<(Vec<(usize, T)>, Relation, T)> = constraints
        .iter()
        .map(|c| {
            if c.rhs < T::zero() {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.terms.iter().map(|&(j, a)| (j, -a)).collect(), flipped, -c.rhs)
            } else {
                (c.terms.clone(), c.relation, c.rhs)
            }
        })
        .collect();

    let slack_count = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
    let artificial_count = normalized.iter().filter(|c| c.1 != Relation::Le).count();
    let width = n + slack_count + artificial_count;
    let first_artificial = n + slack_count;

    let mut rows = vec![vec![T::zero(); width + 1]; m];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_artificial) = (n, first_artificial);
    for (r, (terms, relation, rhs)) in normalized.iter().enumerate() {
        for &(j, a) in terms {
            if j >= n {
                return Err(Error::DimensionMismatch(format!("constraint refers to variable {j} of {n}")));
            }
            rows[r][j] = rows[r][j] + a;
        }
        rows[r][width] = *rhs;
        match relation {
            Relation::Le => {
                rows[r][next_slack] = T::one();
                basis[r] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                rows[r][next_slack] = -T::one();
                next_slack += 1;
                rows[r][next_artificial] = T::one();
                basis[r] = next_artificial;
                next_artificial += 1;
            }
            Relation::Eq => {
                rows[r][next_artificial] = T::one();
                basis[r] = next_artificial;
                next_artificial += 1;
            }
        }
    }

    let mut cost = vec![T::zero(); width + 1];
    for c in cost.iter_mut().take(width).skip(first_artificial) {
        *c = T::one();
    }
    let mut tableau = Tableau { rows, cost, basis, width };
    for r in 0..m {
        if tableau.basis[r] >= first_artificial {
            let row = tableau.rows[r].clone();
            for (c, v) in tableau.cost.iter_mut().zip(row) {
                *c = *c - v;
            }
        }
    }
    tableau.optimize(&|_| true)?;
    let infeasibility = -tableau.cost[width];
    if !infeasibility.approx_zero() {
        return Err(Error::Infeasible("linear program has no feasible point".into()));
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tableau.rows.len() {
        if tableau.basis[r] >= first_artificial {
            let replacement = (0..first_artificial).find(|&j| !tableau.rows[r][j].approx_zero());
            match replacement {
                Some(col) => tableau.pivot(r, col),
                None => {
                    tableau.rows.remove(r);
                    tableau.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = vec![T::zero(); width + 1];
    cost[..n].copy_from_slice(objective);
    tableau.cost = cost;
    for r in 0..tableau.rows.len() {
        let row = tableau.rows[r].clone();
        eliminate(&mut tableau.cost, &row, tableau.basis[r]);
    }
    tableau.optimize(&|j| j < first_artificial)?;

    let mut values = vec![T::zero(); n];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            values[b] = tableau.rhs(r).snap();
        }
    }
    let value = objective.iter().zip(&values).fold(T::zero(), |acc, (&c, &x)| acc + c * x);
    Ok(LpSolution { objective: value, values })
}

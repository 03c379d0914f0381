//! The linearised formulation as a plain-text model, and the relaxed
//! (non-integral) variants solved as linear programs.
//!
//! Model text layout:
//!
//! ```text
//! OBJECTIVE
//! minimize: + 1 y_0_0_1 + 2 y_1_0_1
//! CONSTRAINTS
//! assign_e0: + 1 y_0_0_0 + 1 y_1_0_0 = 1
//! BOUNDS
//! 0 <= y_0_0_0 <= 1
//! w_0_1 = 1
//! COMMENTS
//! free text
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Assignment, Criterion, Instance, VariantSpec};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::solvers::simplex::{minimize, Constraint, LpSolution, Relation};

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow<T = Rational> {
    pub name: String,
    pub terms: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T = Rational> {
    pub variables: Vec<String>,
    /// Minimised.
    pub objective: Vec<(usize, T)>,
    pub rows: Vec<LpRow<T>>,
    /// Lower and optional upper bound of every variable.
    pub bounds: Vec<(T, Option<T>)>,
    pub comments: Vec<String>,
}

impl<T: Scalar> LinearProgram<T> {
    fn new() -> Self {
        LinearProgram { variables: Vec::new(), objective: Vec::new(), rows: Vec::new(), bounds: Vec::new(), comments: Vec::new() }
    }

    fn add_variable(&mut self, name: String, lower: T, upper: Option<T>) -> usize {
        self.variables.push(name);
        self.bounds.push((lower, upper));
        self.variables.len() - 1
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Rows whose name starts with `prefix`.
    pub fn rows_named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a LpRow<T>> + 'a {
        self.rows.iter().filter(move |r| r.name.starts_with(prefix))
    }

    pub fn to_text(&self) -> String {
        let value = |v: T| format_rational(&v.to_rational());
        let terms = |terms: &[(usize, T)]| {
            let mut out = String::new();
            for &(j, a) in terms {
                let sign = if a < T::zero() { "-" } else { "+" };
                let _ = write!(out, " {sign} {} {}", value(a.abs()), self.variables[j]);
            }
            out
        };
        let mut text = String::from("OBJECTIVE\n");
        let _ = writeln!(text, "minimize:{}", terms(&self.objective));
        text.push_str("CONSTRAINTS\n");
        for row in &self.rows {
            let _ = writeln!(text, "{}:{} {} {}", row.name, terms(&row.terms), row.relation.symbol(), value(row.rhs));
        }
        text.push_str("BOUNDS\n");
        for (name, &(lower, upper)) in self.variables.iter().zip(&self.bounds) {
            let _ = match upper {
                Some(u) if u.approx_eq(lower) => writeln!(text, "{name} = {}", value(lower)),
                Some(u) => writeln!(text, "{} <= {name} <= {}", value(lower), value(u)),
                None => writeln!(text, "{name} >= {}", value(lower)),
            };
        }
        text.push_str("COMMENTS\n");
        for line in &self.comments {
            let _ = writeln!(text, "{line}");
        }
        text
    }

    /// Solves the model, returning values for every declared variable.
    pub fn solve(&self) -> Result<LpSolution<T>> {
        // Shift every variable by its lower bound; fixed ones become constants.
        let mut column = vec![None; self.variables.len()];
        let mut columns = 0;
        for (j, &(lower, upper)) in self.bounds.iter().enumerate() {
            if upper.is_none_or(|u| !u.approx_eq(lower)) {
                column[j] = Some(columns);
                columns += 1;
            }
            if let Some(u) = upper {
                if u < lower && !u.approx_eq(lower) {
                    return Err(Error::Infeasible(format!("bounds of {} are empty", self.variables[j])));
                }
            }
        }
        let shift = |terms: &[(usize, T)]| {
            let mut shifted = Vec::new();
            let mut constant = T::zero();
            for &(j, a) in terms {
                constant = constant + a * self.bounds[j].0;
                if let Some(c) = column[j] {
                    shifted.push((c, a));
                }
            }
            (shifted, constant)
        };
        let mut constraints = Vec::new();
        for row in &self.rows {
            let (terms, constant) = shift(&row.terms);
            constraints.push(Constraint { terms, relation: row.relation, rhs: row.rhs - constant });
        }
        for (j, &(lower, upper)) in self.bounds.iter().enumerate() {
            if let (Some(c), Some(u)) = (column[j], upper) {
                constraints.push(Constraint { terms: vec![(c, T::one())], relation: Relation::Le, rhs: u - lower });
            }
        }
        let (objective_terms, constant) = shift(&self.objective);
        let mut objective = vec![T::zero(); columns];
        for (c, a) in objective_terms {
            objective[c] = objective[c] + a;
        }
        let solution = minimize(&objective, &constraints)?;
        let values = (0..self.variables.len())
            .map(|j| match column[j] {
                Some(c) => solution.values[c] + self.bounds[j].0,
                None => self.bounds[j].0,
            })
            .collect();
        Ok(LpSolution { objective: solution.objective + constant, values })
    }
}

impl LinearProgram<Rational> {
    /// Reads the text produced by [`LinearProgram::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut lp = LinearProgram::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut section = "";
        let mut pending_rows: Vec<(String, Vec<(String, Rational)>, Relation, Rational)> = Vec::new();
        let mut objective: Vec<(String, Rational)> = Vec::new();
        let mut bounds: Vec<(String, Rational, Option<Rational>)> = Vec::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", number + 1));
            match line {
                "OBJECTIVE" | "CONSTRAINTS" | "BOUNDS" | "COMMENTS" => {
                    section = match line {
                        "OBJECTIVE" => "objective",
                        "CONSTRAINTS" => "constraints",
                        "BOUNDS" => "bounds",
                        _ => "comments",
                    };
                    continue;
                }
                _ => {}
            }
            if section == "comments" {
                lp.comments.push(raw.to_string());
                continue;
            }
            if line.is_empty() {
                continue;
            }
            match section {
                "objective" => {
                    let body = line.strip_prefix("minimize:").ok_or_else(|| err("expected `minimize:`"))?;
                    objective = parse_terms(body).map_err(|m| err(&m))?;
                }
                "constraints" => {
                    let (name, body) = line.split_once(':').ok_or_else(|| err("expected `name:`"))?;
                    let (lhs, relation, rhs) = split_relation(body).ok_or_else(|| err("missing relation"))?;
                    let terms = parse_terms(lhs).map_err(|m| err(&m))?;
                    let rhs = parse_rational(rhs).map_err(|_| err("bad right-hand side"))?;
                    pending_rows.push((name.trim().to_string(), terms, relation, rhs));
                }
                "bounds" => {
                    let parts: Vec<&str> = line.split_whitespace().collect();
                    let num = |s: &str| parse_rational(s).map_err(|_| err("bad bound"));
                    match parts.as_slice() {
                        [name, "=", v] => {
                            let v = num(v)?;
                            bounds.push((name.to_string(), v, Some(v)));
                        }
                        [l, "<=", name, "<=", u] => bounds.push((name.to_string(), num(l)?, Some(num(u)?))),
                        [name, ">=", l] => bounds.push((name.to_string(), num(l)?, None)),
                        _ => return Err(err("unrecognised bound")),
                    }
                }
                _ => return Err(err("content before the OBJECTIVE section")),
            }
        }
        for (name, lower, upper) in bounds {
            if index.contains_key(&name) {
                return Err(Error::Parse(format!("variable {name} bounded twice")));
            }
            let j = lp.add_variable(name.clone(), lower, upper);
            index.insert(name, j);
        }
        let resolve = |terms: Vec<(String, Rational)>, index: &mut HashMap<String, usize>, lp: &mut LinearProgram| {
            terms
                .into_iter()
                .map(|(name, a)| {
                    let j = match index.get(&name) {
                        Some(&j) => j,
                        None => {
                            let j = lp.add_variable(name.clone(), Rational::from_int(0), None);
                            index.insert(name, j);
                            j
                        }
                    };
                    (j, a)
                })
                .collect::<Vec<_>>()
        };
        lp.objective = resolve(objective, &mut index, &mut lp);
        for (name, terms, relation, rhs) in pending_rows {
            let terms = resolve(terms, &mut index, &mut lp);
            lp.rows.push(LpRow { name, terms, relation, rhs });
        }
        Ok(lp)
    }
}

fn split_relation(body: &str) -> Option<(&str, Relation, &str)> {
    for (symbol, relation) in [("<=", Relation::Le), (">=", Relation::Ge), ("=", Relation::Eq)] {
        if let Some((lhs, rhs)) = body.split_once(symbol) {
            return Some((lhs, relation, rhs));
        }
    }
    None
}

fn parse_terms(body: &str) -> Result<Vec<(String, Rational)>, String> {
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if !tokens.len().is_multiple_of(3) {
        return Err("terms must be `+ coefficient name` triples".into());
    }
    tokens
        .chunks(3)
        .map(|chunk| {
            let sign = match chunk[0] {
                "+" => Rational::from_int(1),
                "-" => Rational::from_int(-1),
                other => return Err(format!("expected a sign, found {other:?}")),
            };
            let coefficient = parse_rational(chunk[1]).map_err(|e| e.to_string())?;
            Ok((chunk[2].to_string(), sign * coefficient))
        })
        .collect()
}

/// Emits the linearised formulation with center variables w_i_v and
/// linearised allocations y_v_i_e (indices 0-based).
///
/// `variant` selects the criteria to model and must lie within {B, O, W};
/// integrality and node selection are relaxed. Centers are fixed through
/// the bounds of `w` when the instance fixes them.
pub fn export_linear_program<T: Scalar>(instance: &Instance<T>, variant: VariantSpec) -> Result<LinearProgram<T>> {
    variant.check_meaningful()?;
    let allowed = VariantSpec::of(&[Criterion::Balance, Criterion::Objective, Criterion::Weighted]);
    if !variant.is_subset_of(allowed) {
        return Err(Error::UnsupportedVariant {
            solver: "export-lp",
            variant: variant.to_string(),
            reason: "the exported model is linear only within {B, O, W}".into(),
        });
    }
    let bounds = match (variant.balance(), instance.bounds()) {
        (true, None) => {
            return Err(Error::InvalidInstance("balance rows need an instance with a balance window".into()))
        }
        (true, Some(b)) => Some(b),
        (false, _) => None,
    };
    let graph = instance.graph();
    let (n, p, m) = (graph.vertex_count(), instance.districts(), graph.edge_count());
    let mut lp = LinearProgram::new();
    let y = |v: usize, i: usize, e: usize| (v * p + i) * m + e;
    for v in 0..n {
        for i in 0..p {
            for e in 0..m {
                lp.add_variable(format!("y_{v}_{i}_{e}"), T::zero(), Some(T::one()));
            }
        }
    }
    let w_base = n * p * m;
    let w = |i: usize, v: usize| w_base + i * n + v;
    for i in 0..p {
        for v in 0..n {
            let (lower, upper) = match instance.fixed_centers() {
                Some(c) if c[i] == v => (T::one(), T::one()),
                Some(_) => (T::zero(), T::zero()),
                None => (T::zero(), T::one()),
            };
            lp.add_variable(format!("w_{i}_{v}"), lower, Some(upper));
        }
    }

    for v in 0..n {
        for i in 0..p {
            for e in 0..m {
                let d = instance.distance(v, e);
                if variant.objective() && !d.is_zero() {
                    lp.objective.push((y(v, i, e), d));
                }
            }
        }
    }
    for e in 0..m {
        let terms = (0..n).flat_map(|v| (0..p).map(move |i| (y(v, i, e), T::one()))).collect();
        lp.rows.push(LpRow { name: format!("assign_e{e}"), terms, relation: Relation::Eq, rhs: T::one() });
    }
    for i in 0..p {
        let terms = (0..n).map(|v| (w(i, v), T::one())).collect();
        lp.rows.push(LpRow { name: format!("center_i{i}"), terms, relation: Relation::Eq, rhs: T::one() });
    }
    for v in 0..n {
        for i in 0..p {
            for e in 0..m {
                lp.rows.push(LpRow {
                    name: format!("link_v{v}_i{i}_e{e}"),
                    terms: vec![(y(v, i, e), T::one()), (w(i, v), -T::one())],
                    relation: Relation::Le,
                    rhs: T::zero(),
                });
            }
        }
    }
    if let Some(b) = bounds {
        for i in 0..p {
            let load: Vec<(usize, T)> = (0..n)
                .flat_map(|v| (0..m).map(move |e| (v, e)))
                .map(|(v, e)| (y(v, i, e), graph.edge(e).weight))
                .collect();
            lp.rows.push(LpRow { name: format!("balance_lower_i{i}"), terms: load.clone(), relation: Relation::Ge, rhs: b.lower });
            lp.rows.push(LpRow { name: format!("balance_upper_i{i}"), terms: load, relation: Relation::Le, rhs: b.upper });
        }
    }

    lp.comments.push(format!("variant {variant}; {n} vertices, {m} edges, {p} districts"));
    lp.comments.push("x_i_e = sum over v of y_v_i_e".into());
    if instance.variant().integrity() || instance.variant().node_selection() {
        lp.comments.push("integrality of x and w is relaxed to [0, 1]".into());
    }
    if instance.variant().contiguity() {
        lp.comments.push("contiguity cut family, not enumerated: for every district i and edge subset D,".into());
        lp.comments.push("  sum over e in boundary(V_D) of x_i_e + sum over e in D of (1 - x_i_e) + sum over v in V_D of w_i_v >= 1".into());
    }
    Ok(lp)
}

/// Solves variants without integrality and without node selection as a
/// linear program over x_{i,e}.
pub fn solve_linear<T: Scalar>(instance: &Instance<T>) -> Result<Assignment<T>> {
    let variant = instance.variant();
    if variant.integrity() || variant.node_selection() {
        return Err(Error::UnsupportedVariant {
            solver: "lp",
            variant: variant.to_string(),
            reason: "integral allocation and node selection are not linear".into(),
        });
    }
    let centers = instance.fixed_centers().expect("centers are fixed without N").to_vec();
    Ok(solve_fixed_centers(instance, &centers)?.0)
}

/// Fractional optimum for a given center choice; used by the exact solver
/// for every non-integral variant.
pub(crate) fn solve_fixed_centers<T: Scalar>(instance: &Instance<T>, centers: &[usize]) -> Result<(Assignment<T>, T)> {
    let graph = instance.graph();
    let (p, m) = (centers.len(), graph.edge_count());
    let var = |i: usize, e: usize| i * m + e;
    let mut objective = vec![T::zero(); p * m];
    for (i, &c) in centers.iter().enumerate() {
        for e in 0..m {
            objective[var(i, e)] = instance.distance(c, e);
        }
    }
    let mut rows = Vec::new();
    for e in 0..m {
        rows.push(Constraint { terms: (0..p).map(|i| (var(i, e), T::one())).collect(), relation: Relation::Eq, rhs: T::one() });
    }
    if let Some(b) = instance.bounds() {
        for i in 0..p {
            let load: Vec<(usize, T)> = (0..m).map(|e| (var(i, e), graph.edge(e).weight)).collect();
            rows.push(Constraint { terms: load.clone(), relation: Relation::Ge, rhs: b.lower });
            rows.push(Constraint { terms: load, relation: Relation::Le, rhs: b.upper });
        }
    }
    let solution = minimize(&objective, &rows)?;
    let x = (0..p).map(|i| (0..m).map(|e| solution.values[var(i, e)]).collect()).collect();
    Ok((Assignment::new(x, centers.to_vec())?, solution.objective))
}

//! JSON instance and solution documents.
//!
//! Numbers are written as JSON integers when integral and as `"p/q"`
//! strings otherwise; decimals are accepted on input.
//!
//! ```json
//! {
//!   "vertices": 4,
//!   "edges": [[0, 1, 1], [1, 2, 1], [2, 3, 1]],
//!   "p": 2,
//!   "variant": "BIO",
//!   "balance": {"mode": "additive", "tau": "1/2"},
//!   "centers": [0, 3],
//!   "alpha": 0
//! }
//! ```

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Assignment, BalanceSpec, Instance, VariantSpec};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Exact number in a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Number(pub Rational);

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            let value = self.0.to_integer();
            match i64::try_from(value) {
                Ok(v) => serializer.serialize_i64(v),
                Err(_) => serializer.serialize_str(&value.to_string()),
            }
        } else {
            serializer.serialize_str(&format_rational(&self.0))
        }
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct NumberVisitor;

        impl Visitor<'_> for NumberVisitor {
            type Value = Number;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer, a decimal or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Number, E> {
                Ok(Number(Rational::from_integer(v as i128)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Number, E> {
                Ok(Number(Rational::from_integer(v as i128)))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Number, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite number"));
                }
                // The shortest round-trip decimal is what the author wrote.
                parse_rational(&v.to_string()).map(Number).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Number, E> {
                parse_rational(v).map(Number).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(NumberVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum BalanceDocument {
    Additive { tau: Number },
    Multiplicative { tau: Number },
    Explicit { phi_l: Number, phi_u: Number },
}

/// Instance document with canonical field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Number)>,
    pub p: usize,
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balance: Option<BalanceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<Vec<usize>>,
    #[serde(default = "zero")]
    pub alpha: Number,
}

fn zero() -> Number {
    Number(Rational::from_integer(0))
}

impl InstanceDocument {
    pub fn from_instance<T: Scalar>(instance: &Instance<T>) -> Self {
        let num = |v: T| Number(v.to_rational());
        let graph = instance.graph();
        InstanceDocument {
            vertices: graph.vertex_count(),
            edges: graph.edges().iter().map(|e| (e.u, e.v, num(e.weight))).collect(),
            p: instance.districts(),
            variant: instance.variant().to_string(),
            balance: instance.balance().map(|b| match *b {
                BalanceSpec::Additive { tau } => BalanceDocument::Additive { tau: num(tau) },
                BalanceSpec::Multiplicative { tau } => BalanceDocument::Multiplicative { tau: num(tau) },
                BalanceSpec::Explicit { lower, upper } => {
                    BalanceDocument::Explicit { phi_l: num(lower), phi_u: num(upper) }
                }
            }),
            centers: instance.fixed_centers().map(<[usize]>::to_vec),
            alpha: num(instance.alpha()),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let variant: VariantSpec = self.variant.parse()?;
        let edges = self.edges.iter().map(|&(u, v, b)| (u, v, b.0)).collect();
        let graph = Graph::new(self.vertices, edges)?;
        let balance = self.balance.as_ref().map(|b| match *b {
            BalanceDocument::Additive { tau } => BalanceSpec::Additive { tau: tau.0 },
            BalanceDocument::Multiplicative { tau } => BalanceSpec::Multiplicative { tau: tau.0 },
            BalanceDocument::Explicit { phi_l, phi_u } => BalanceSpec::explicit(phi_l.0, phi_u.0),
        });
        Instance::builder(graph, self.p)
            .variant(variant)
            .maybe_balance(balance)
            .maybe_centers(self.centers.clone())
            .alpha(self.alpha.0)
            .build()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialise");
        text.push('\n');
        text
    }
}

/// Solution document: allocation matrix, centers and the objective when the
/// variant has compactness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub x: Vec<Vec<Number>>,
    pub centers: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Number>,
}

impl SolutionDocument {
    pub fn from_assignment<T: Scalar>(assignment: &Assignment<T>, objective: Option<T>) -> Self {
        SolutionDocument {
            x: assignment.rows().iter().map(|row| row.iter().map(|v| Number(v.to_rational())).collect()).collect(),
            centers: assignment.centers().to_vec(),
            objective: objective.map(|o| Number(o.to_rational())),
        }
    }

    pub fn to_assignment(&self) -> Result<Assignment> {
        Assignment::new(
            self.x.iter().map(|row| row.iter().map(|n| n.0).collect()).collect(),
            self.centers.clone(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialise");
        text.push('\n');
        text
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    InstanceDocument::parse(&text)?.to_instance()
}

pub fn write_instance<T: Scalar>(path: &Path, instance: &Instance<T>) -> Result<()> {
    std::fs::write(path, InstanceDocument::from_instance(instance).to_json())?;
    Ok(())
}

pub fn read_solution(path: &Path) -> Result<Assignment> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    SolutionDocument::parse(&text)?.to_assignment()
}

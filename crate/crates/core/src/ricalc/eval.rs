use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::qcore::{cond_entropy, cond_mutual_info, entropy, mutual_info, QuantumState};
use crate::ricalc::{EntropicExpr, RIStatement, Resource};
use crate::{tol, Error, Result};

/// Maps RI system labels to layout labels of the bound state.
///
/// A label without an explicit binding resolves to itself when the state's
/// layout has it. Binding a label to an empty list makes it a trivial system.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bindings(pub BTreeMap<String, Vec<String>>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind<S: Into<String>>(mut self, ri_label: &str, layout_labels: impl IntoIterator<Item = S>) -> Self {
        self.0.insert(ri_label.to_string(), layout_labels.into_iter().map(Into::into).collect());
        self
    }

    fn resolve<Q: QuantumState + ?Sized>(&self, state: &Q, labels: &[String]) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for l in labels {
            match self.0.get(l) {
                Some(mapped) => {
                    for m in mapped {
                        if !state.layout().contains(m) {
                            return Err(Error::Unresolvable(format!("`{l}` is bound to `{m}`, which the state lacks")));
                        }
                        out.push(m.clone());
                    }
                }
                None if state.layout().contains(l) => out.push(l.clone()),
                None => return Err(Error::Unresolvable(format!("system `{l}` is not in the bound state"))),
            }
        }
        Ok(out)
    }
}

/// Numeric coefficient per resource on each side of an evaluated RI.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Evaluation {
    pub lhs: BTreeMap<Resource, f64>,
    pub rhs: BTreeMap<Resource, f64>,
}

/// Serializable row of an [`Evaluation`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceAmount {
    pub resource: String,
    pub lhs: f64,
    pub rhs: f64,
    pub net: f64,
}

impl Evaluation {
    /// Net consumption `lhs - rhs` per resource; opposite terms fold here.
    pub fn net(&self) -> BTreeMap<Resource, f64> {
        let mut out = self.lhs.clone();
        for (r, v) in &self.rhs {
            *out.entry(r.clone()).or_insert(0.0) -= v;
        }
        out
    }

    pub fn rows(&self) -> Vec<ResourceAmount> {
        self.net()
            .into_iter()
            .map(|(r, net)| ResourceAmount {
                lhs: self.lhs.get(&r).copied().unwrap_or(0.0),
                rhs: self.rhs.get(&r).copied().unwrap_or(0.0),
                resource: r.to_string(),
                net,
            })
            .collect()
    }
}

fn finite(v: f64, what: &EntropicExpr) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Unresolvable(format!("`{what}` has no finite value")))
    }
}

/// Numeric value of a single coefficient expression on `state`.
pub fn evaluate_expr<Q: QuantumState + ?Sized>(e: &EntropicExpr, state: &Q, b: &Bindings) -> Result<f64> {
    use EntropicExpr as E;
    let v = match e {
        E::Num(v) => *v,
        E::Infinity => return Err(Error::Unresolvable("`inf` has no numeric value".into())),
        E::Symbol { .. } => return Err(Error::Unresolvable(format!("symbolic quantity `{e}`"))),
        E::Entropy { x, given, .. } => {
            let x = b.resolve(state, x)?;
            match given {
                Some(g) => cond_entropy(state, &x, &b.resolve(state, g)?)?,
                None => entropy(state, &x)?,
            }
        }
        E::MutualInfo { x, y, given, .. } => {
            let (x, y) = (b.resolve(state, x)?, b.resolve(state, y)?);
            match given {
                Some(g) => cond_mutual_info(state, &x, &y, &b.resolve(state, g)?)?,
                None => mutual_info(state, &x, &y)?,
            }
        }
        E::Neg(a) => -evaluate_expr(a, state, b)?,
        E::Add(x, y) => evaluate_expr(x, state, b)? + evaluate_expr(y, state, b)?,
        E::Sub(x, y) => evaluate_expr(x, state, b)? - evaluate_expr(y, state, b)?,
        E::Mul(x, y) => evaluate_expr(x, state, b)? * evaluate_expr(y, state, b)?,
        E::Div(x, y) => {
            let d = evaluate_expr(y, state, b)?;
            if d.abs() <= tol::NUM {
                return Err(Error::Unresolvable(format!("division by zero in `{e}`")));
            }
            evaluate_expr(x, state, b)? / d
        }
    };
    finite(v, e)
}

/// Evaluates every coefficient on `state` and sums them per resource.
pub fn evaluate<Q: QuantumState + ?Sized>(ri: &RIStatement, state: &Q, bindings: &Bindings) -> Result<Evaluation> {
    let mut out = Evaluation::default();
    for (terms, side) in [(&ri.lhs, &mut out.lhs), (&ri.rhs, &mut out.rhs)] {
        for t in terms {
            let v = match &t.coeff {
                Some(c) => evaluate_expr(c, state, bindings)?,
                None => 1.0,
            };
            *side.entry(t.resource.clone()).or_insert(0.0) += v;
        }
    }
    Ok(out)
}

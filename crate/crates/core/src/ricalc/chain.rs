use crate::ricalc::{EntropicExpr, RIStatement, Term};
use crate::{Error, Result};

/// Term-wise sum of two RIs.
pub fn add(a: &RIStatement, b: &RIStatement) -> RIStatement {
    RIStatement {
        lhs: a.lhs.iter().chain(&b.lhs).cloned().collect(),
        rhs: a.rhs.iter().chain(&b.rhs).cloned().collect(),
    }
}

/// Removes `(coefficient, resource)` pairs that appear verbatim on both
/// sides. A missing coefficient matches an explicit `1`.
pub fn cancel(ri: &RIStatement) -> RIStatement {
    let mut lhs = ri.lhs.clone();
    let mut rhs = Vec::with_capacity(ri.rhs.len());
    for t in &ri.rhs {
        let hit = lhs.iter().position(|l| l.resource == t.resource && l.coefficient() == t.coefficient());
        match hit {
            Some(i) => {
                lhs.remove(i);
            }
            None => rhs.push(t.clone()),
        }
    }
    RIStatement { lhs, rhs }
}

/// Feeds the output of `first` into `second`.
///
/// At least one resource produced by `first` must be consumed by `second`.
/// Matched terms with syntactically equal coefficients cancel here; the rest
/// stay on both sides and fold numerically on evaluation.
pub fn chain(first: &RIStatement, second: &RIStatement) -> Result<RIStatement> {
    let linked = first.rhs.iter().any(|p| second.lhs.iter().any(|c| c.resource == p.resource));
    if !linked {
        return Err(Error::NoMatchingResources(format!("nothing produced by `{first}` is consumed by `{second}`")));
    }
    Ok(cancel(&add(first, second)))
}

fn scale_expr(k: &EntropicExpr, c: Option<&EntropicExpr>) -> EntropicExpr {
    match c {
        None => k.clone(),
        Some(EntropicExpr::Num(v)) if *v == 1.0 => k.clone(),
        Some(c) => EntropicExpr::Mul(Box::new(c.clone()), Box::new(k.clone())),
    }
}

/// Multiplies every coefficient by `k`.
pub fn scale(ri: &RIStatement, k: &EntropicExpr) -> RIStatement {
    let f = |t: &Term| Term::new(Some(scale_expr(k, t.coeff.as_ref())), t.resource.clone());
    RIStatement { lhs: ri.lhs.iter().map(f).collect(), rhs: ri.rhs.iter().map(f).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ricalc::{builtin, parse, parse_expr, Resource};

    #[test]
    fn teleport_then_superdense() {
        let t = builtin("teleportation").unwrap();
        let s = builtin("superdense").unwrap();
        let c = chain(&t, &s).unwrap();
        assert_eq!(c.to_string(), "[qq] + [qq] >= 0");
    }

    #[test]
    fn fqsw_plus_teleportation() {
        let k = parse_expr("0.5 I(A;R)").unwrap();
        let t = scale(&builtin("teleportation").unwrap(), &k);
        let c = chain(&t, &builtin("fqsw").unwrap()).unwrap();
        assert!(c.lhs.iter().all(|t| t.resource != Resource::QubitChannel));
        assert!(c.rhs.iter().all(|t| t.resource != Resource::QubitChannel));
    }

    #[test]
    fn disjoint_chain_fails() {
        let a = parse("[qq] >= [c->c]").unwrap();
        let b = parse("[q->q] >= [qq]").unwrap();
        assert!(matches!(chain(&a, &b), Err(Error::NoMatchingResources(_))));
    }

    #[test]
    fn cancel_treats_missing_coefficient_as_one() {
        let ri = parse("1 [qq] + [q->q] >= [qq]").unwrap();
        assert_eq!(cancel(&ri).to_string(), "[q->q] >= 0");
    }

    #[test]
    fn scale_keeps_unit_terms_simple() {
        let k = parse_expr("H(A)").unwrap();
        let s = scale(&parse("[qq] + 2 [c->c] >= [q->q]").unwrap(), &k);
        assert_eq!(s.to_string(), "H(A) [qq] + 2 H(A) [c->c] >= H(A) [q->q]");
    }
}

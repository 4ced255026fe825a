//! Numeric audit of the entropy identities used by the converse, on `n`
//! copies of the purified source with an auxiliary system `X` produced from
//! `B^n` by an isometry.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channels::{apply_isometry, StinespringIsometry};
use crate::qcore::{
    cond_entropy, cond_mutual_info, mutual_info, purify, DensityOperator, PureState, QuantumState, SystemLayout,
};
use crate::rates::{HelperInstance, LABEL_A, LABEL_B, LABEL_R};
use crate::{tol, Error, Result};

/// Largest dilated state the audit will build densely.
pub const MAX_AUDIT_DIM: usize = 1 << 16;

/// How the auxiliary system is produced from `B^n`.
#[derive(Debug, Clone, PartialEq)]
pub enum AuditMap {
    /// The same isometry on every `B_i`; `X = C_1 ... C_n`.
    PerCopy(StinespringIsometry),
    /// One isometry on the joint system `B_1 ... B_n`; `X = C`.
    Joint(StinespringIsometry),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditCheck {
    /// `H(A^n|X) = sum_i H(A_i | X A_<i)`
    CondEntropyChainRule,
    /// `I(X; R^n A^n) = sum_i I(X; R_i A_i | R_<i A_<i)`
    MutualInfoChainRule,
    /// `I(X; R_i A_i | R_<i A_<i) = I(X R_<i A_<i; R_i A_i) - I(R_<i A_<i; R_i A_i)`
    ConditionalSplit,
    /// `I(R_<i A_<i; R_i A_i) = 0` for independent copies
    CopyIndependence,
    /// `I(X R_<i A_<i; R_i A_i) >= I(X A_<i; R_i A_i)`
    Monotonicity,
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditCheck::CondEntropyChainRule => "cond_entropy_chain_rule",
            AuditCheck::MutualInfoChainRule => "mutual_info_chain_rule",
            AuditCheck::ConditionalSplit => "conditional_split",
            AuditCheck::CopyIndependence => "copy_independence",
            AuditCheck::Monotonicity => "monotonicity",
        };
        f.write_str(s)
    }
}

/// One audited step. For identities the residual is `|lhs - rhs|`; for the
/// inequality it is the violation `max(0, rhs - lhs)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditResidual {
    pub check: AuditCheck,
    /// Copy index `i` (1-based) for per-copy checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub copy: Option<usize>,
    pub residual: f64,
    pub passed: bool,
}

impl AuditResidual {
    fn new(check: AuditCheck, copy: Option<usize>, residual: f64) -> Self {
        Self { check, copy, residual, passed: residual <= tol::ENT }
    }

    pub fn name(&self) -> String {
        match self.copy {
            Some(i) => format!("{}[i={i}]", self.check),
            None => self.check.to_string(),
        }
    }
}

fn indexed(prefix: &str, i: usize) -> String {
    format!("{prefix}{i}")
}

/// `psi_ABR^{⊗n}` with labels `A1 B1 R1 A2 B2 R2 ...`.
fn copies(rho_ab: &DensityOperator, n: usize) -> Result<PureState> {
    let psi = purify(rho_ab, LABEL_R)?;
    let mut out: Option<PureState> = None;
    for i in 1..=n {
        let dims: Vec<usize> =
            [LABEL_A, LABEL_B, LABEL_R].iter().map(|l| psi.layout().dim_of(l)).collect::<Result<_>>()?;
        let relabelled = psi
            .permute(&[LABEL_A, LABEL_B, LABEL_R])?
            .relabel(SystemLayout::new([indexed("A", i), indexed("B", i), indexed("R", i)], &dims)?)?;
        out = Some(match out {
            None => relabelled,
            Some(acc) => acc.tensor(&relabelled)?,
        });
    }
    out.ok_or_else(|| Error::InvalidParameter("audit needs n >= 1".into()))
}

/// Audit with the instance's helper applied to every copy of `B`.
pub fn converse_audit(inst: &HelperInstance, n: usize) -> Result<Vec<AuditResidual>> {
    converse_audit_with(inst.rho_ab(), &AuditMap::PerCopy(inst.helper().clone()), n)
}

pub fn converse_audit_with(rho_ab: &DensityOperator, map: &AuditMap, n: usize) -> Result<Vec<AuditResidual>> {
    if n == 0 {
        return Err(Error::InvalidParameter("audit needs n >= 1".into()));
    }
    let db = rho_ab.layout().dim_of(LABEL_B)?;
    let da = rho_ab.layout().dim_of(LABEL_A)?;
    let rank = crate::linalg::hermitian_eigenvalues(rho_ab.matrix()).iter().filter(|&&l| l > tol::RANK).count().max(1);
    let (dc, de) = match map {
        AuditMap::PerCopy(v) => (v.dim_out().pow(n as u32), v.dim_env().pow(n as u32)),
        AuditMap::Joint(v) => (v.dim_out(), v.dim_env()),
    };
    let total = (da * rank)
        .checked_pow(n as u32)
        .and_then(|x| x.checked_mul(dc))
        .and_then(|x| x.checked_mul(de))
        .and_then(|x| x.checked_mul(db.pow(n as u32)));
    match total {
        Some(t) if t <= MAX_AUDIT_DIM => {}
        _ => {
            return Err(Error::DimensionOverflow(format!(
                "{n} copies with the given map exceed {MAX_AUDIT_DIM} amplitudes"
            )))
        }
    }

    let mut state = copies(rho_ab, n)?;
    let x_labels: Vec<String> = match map {
        AuditMap::PerCopy(v) => {
            for i in 1..=n {
                state = apply_isometry(&state, v, &indexed("B", i), (&indexed("C", i), &indexed("E", i)))?;
            }
            (1..=n).map(|i| indexed("C", i)).collect()
        }
        AuditMap::Joint(v) => {
            let bs: Vec<String> = (1..=n).map(|i| indexed("B", i)).collect();
            let mut order: Vec<String> = state.layout().labels().iter().filter(|l| !bs.contains(l)).cloned().collect();
            order.extend(bs.iter().cloned());
            state = state.permute(&order)?.merge(&bs, LABEL_B)?;
            state = apply_isometry(&state, v, LABEL_B, ("C", "E"))?;
            vec!["C".to_string()]
        }
    };
    audit_state(&state, &x_labels, n)
}

fn audit_state(state: &PureState, x: &[String], n: usize) -> Result<Vec<AuditResidual>> {
    let a: Vec<String> = (1..=n).map(|i| indexed("A", i)).collect();
    let r: Vec<String> = (1..=n).map(|i| indexed("R", i)).collect();
    let ra =
        |range: std::ops::Range<usize>| -> Vec<String> { range.flat_map(|k| [r[k].clone(), a[k].clone()]).collect() };
    let join = |parts: &[&[String]]| -> Vec<String> { parts.iter().flat_map(|p| p.iter().cloned()).collect() };

    let mut out = Vec::new();

    let lhs = cond_entropy(state, &a, x)?;
    let mut rhs = 0.0;
    for i in 0..n {
        rhs += cond_entropy(state, &a[i..=i], &join(&[x, &a[..i]]))?;
    }
    out.push(AuditResidual::new(AuditCheck::CondEntropyChainRule, None, (lhs - rhs).abs()));

    let lhs = mutual_info(state, x, &ra(0..n))?;
    let mut rhs = 0.0;
    let mut split = Vec::new();
    let mut independence = Vec::new();
    let mut monotone = Vec::new();
    for i in 0..n {
        let past = ra(0..i);
        let now = ra(i..i + 1);
        let cmi = cond_mutual_info(state, x, &now, &past)?;
        rhs += cmi;
        let with_past = mutual_info(state, &join(&[x, &past]), &now)?;
        let past_now = mutual_info(state, &past, &now)?;
        let with_a_past = mutual_info(state, &join(&[x, &a[..i]]), &now)?;
        split.push(AuditResidual::new(AuditCheck::ConditionalSplit, Some(i + 1), (cmi - (with_past - past_now)).abs()));
        independence.push(AuditResidual::new(AuditCheck::CopyIndependence, Some(i + 1), past_now.abs()));
        monotone.push(AuditResidual::new(AuditCheck::Monotonicity, Some(i + 1), (with_a_past - with_past).max(0.0)));
    }
    out.push(AuditResidual::new(AuditCheck::MutualInfoChainRule, None, (lhs - rhs).abs()));
    out.extend(split);
    out.extend(independence);
    out.extend(monotone);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{kraus_to_stinespring, random_isometry, ChannelPreset};
    use crate::qcore::{random, tensor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_copy_reduces_to_definitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random::random_density(SystemLayout::new(["A", "B"], &[2, 2]).unwrap(), &mut rng);
        let inst = HelperInstance::new(rho, random_isometry(2, 2, 2, 5).unwrap()).unwrap();
        let res = converse_audit(&inst, 1).unwrap();
        for r in &res {
            assert!(r.residual <= 1e-12, "{}: {}", r.name(), r.residual);
        }
        assert_eq!(res.len(), 5);
    }

    #[test]
    fn product_source_two_copies_trivial_aux() {
        let a = DensityOperator::diagonal(SystemLayout::single("A", 2).unwrap(), &[0.6, 0.4]).unwrap();
        let b = DensityOperator::diagonal(SystemLayout::single("B", 2).unwrap(), &[0.9, 0.1]).unwrap();
        let rho = tensor(&a, &b).unwrap();
        let discard = kraus_to_stinespring(&ChannelPreset::Discard.to_kraus(2).unwrap());
        let res = converse_audit(&HelperInstance::new(rho, discard).unwrap(), 2).unwrap();
        let indep: Vec<_> = res.iter().filter(|r| r.check == AuditCheck::CopyIndependence).collect();
        assert_eq!(indep.len(), 2);
        assert!(indep.iter().all(|r| r.residual <= 1e-8));
    }

    #[test]
    fn joint_and_per_copy_maps_agree_for_product_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho = random::random_density(SystemLayout::new(["A", "B"], &[2, 2]).unwrap(), &mut rng);
        let v = random_isometry(2, 2, 2, 9).unwrap();
        let per = converse_audit_with(&rho, &AuditMap::PerCopy(v.clone()), 2).unwrap();
        let joint = converse_audit_with(&rho, &AuditMap::Joint(v.tensor(&v)), 2).unwrap();
        assert_eq!(per.len(), joint.len());
        for r in per.iter().chain(&joint) {
            assert!(r.passed, "{} = {}", r.name(), r.residual);
        }
    }

    #[test]
    fn rejects_oversized_and_empty() {
        let rho = DensityOperator::maximally_mixed(SystemLayout::new(["A", "B"], &[4, 4]).unwrap());
        let v = random_isometry(4, 4, 4, 1).unwrap();
        assert!(matches!(
            converse_audit_with(&rho, &AuditMap::PerCopy(v.clone()), 3),
            Err(Error::DimensionOverflow(_))
        ));
        assert!(converse_audit_with(&rho, &AuditMap::PerCopy(v), 0).is_err());
    }
}

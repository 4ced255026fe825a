use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qcore::{random::random_pure, AnyState, QuantumState, StateJson, SystemLayout};
use crate::ricalc::{builtin, chain, evaluate, parse, parse_expr, scale, Bindings, RIStatement, BUILTIN_NAMES};
use crate::{tol, Error, Result};

/// Residuals of one sampled state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleResidual {
    pub index: usize,
    /// Largest `|net_target - net_derived|` over the resources that count.
    pub residual: f64,
    /// The same over classical resources only.
    pub classical_residual: f64,
    pub worst_resource: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub passed: bool,
    pub tolerance: f64,
    pub free_classical: bool,
    pub target: String,
    pub derived: String,
    pub max_residual: f64,
    pub max_classical_residual: f64,
    pub samples: Vec<SampleResidual>,
}

/// Folds `steps` with [`chain`].
fn derive(steps: &[RIStatement]) -> Result<RIStatement> {
    let (first, rest) =
        steps.split_first().ok_or_else(|| Error::InvalidParameter("a derivation needs at least one step".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| chain(&acc, s))
}

fn sample_residual<Q: QuantumState + ?Sized>(
    index: usize,
    target: &RIStatement,
    derived: &RIStatement,
    state: &Q,
    bindings: &Bindings,
    free_classical: bool,
) -> Result<SampleResidual> {
    let t = evaluate(target, state, bindings)?.net();
    let d = evaluate(derived, state, bindings)?.net();
    let resources: BTreeSet<_> = t.keys().chain(d.keys()).cloned().collect();
    let mut out = SampleResidual { index, residual: 0.0, classical_residual: 0.0, worst_resource: None };
    for r in resources {
        let diff = (t.get(&r).copied().unwrap_or(0.0) - d.get(&r).copied().unwrap_or(0.0)).abs();
        if r.is_classical() {
            out.classical_residual = out.classical_residual.max(diff);
            if free_classical {
                continue;
            }
        }
        if diff > out.residual || out.worst_resource.is_none() {
            out.residual = out.residual.max(diff);
            out.worst_resource = Some(r.to_string());
        }
    }
    Ok(out)
}

/// Checks numerically that chaining `steps` reproduces `target` on every
/// sample. Classical communication is reported but ignored for the verdict
/// when `free_classical` is set.
pub fn certify<Q: QuantumState + Sync>(
    target: &RIStatement,
    steps: &[RIStatement],
    states: &[Q],
    bindings: &Bindings,
    free_classical: bool,
) -> Result<CertificateReport> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("a certificate needs at least one sample state".into()));
    }
    let derived = derive(steps)?;
    let samples = states
        .par_iter()
        .enumerate()
        .map(|(i, s)| sample_residual(i, target, &derived, s, bindings, free_classical))
        .collect::<Result<Vec<_>>>()?;
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    let max_classical_residual = samples.iter().map(|s| s.classical_residual).fold(0.0, f64::max);
    Ok(CertificateReport {
        passed: max_residual <= tol::ENT,
        tolerance: tol::ENT,
        free_classical,
        target: target.to_string(),
        derived: derived.to_string(),
        max_residual,
        max_classical_residual,
        samples,
    })
}

/// A derivation step: an RI (or built-in name), optionally scaled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepJson {
    Plain(String),
    Scaled { ri: String, scale: String },
}

/// Seeded Haar-random pure samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomPureSpec {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SamplesJson {
    States(Vec<StateJson>),
    RandomPure { random_pure: RandomPureSpec },
}

/// Certificate file: `{"target", "steps", "bindings", "samples"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub target: String,
    pub steps: Vec<StepJson>,
    #[serde(default)]
    pub bindings: Bindings,
    pub samples: SamplesJson,
    #[serde(default = "default_true")]
    pub free_classical: bool,
}

fn default_true() -> bool {
    true
}

fn resolve_ri(text: &str) -> Result<RIStatement> {
    if BUILTIN_NAMES.contains(&text.trim()) {
        return Ok(builtin(text.trim()).expect("listed"));
    }
    Ok(parse(text)?)
}

impl CertificateFile {
    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn target(&self) -> Result<RIStatement> {
        resolve_ri(&self.target)
    }

    pub fn steps(&self) -> Result<Vec<RIStatement>> {
        self.steps
            .iter()
            .map(|s| match s {
                StepJson::Plain(t) => resolve_ri(t),
                StepJson::Scaled { ri, scale: k } => Ok(scale(&resolve_ri(ri)?, &parse_expr(k)?)),
            })
            .collect()
    }

    pub fn states(&self) -> Result<Vec<AnyState>> {
        match &self.samples {
            SamplesJson::States(v) => v.iter().cloned().map(AnyState::try_from).collect(),
            SamplesJson::RandomPure { random_pure: spec } => {
                let layout = SystemLayout::new(spec.labels.iter().cloned(), &spec.dims)?;
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                Ok((0..spec.count).map(|_| AnyState::Pure(random_pure(layout.clone(), &mut rng))).collect())
            }
        }
    }

    pub fn run(&self) -> Result<CertificateReport> {
        certify(&self.target()?, &self.steps()?, &self.states()?, &self.bindings, self.free_classical)
    }
}

/// Per-resource net amounts, keyed by printed resource.
pub fn net_table(ev: &crate::ricalc::Evaluation) -> BTreeMap<String, f64> {
    ev.net().into_iter().map(|(r, v)| (r.to_string(), v)).collect()
}

use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::qcore::{DensityOperator, QuantumState};
use crate::{Error, Result};

/// Which entropic functional an [`EntropyReport`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "H")]
    Entropy,
    #[serde(rename = "H_cond")]
    CondEntropy,
    #[serde(rename = "I")]
    MutualInfo,
    #[serde(rename = "I_cond")]
    CondMutualInfo,
}

/// A computed entropic quantity in bits, with the label sets it was taken over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub quantity: Quantity,
    pub systems: Vec<Vec<String>>,
    pub value: f64,
}

impl EntropyReport {
    pub fn compute<Q: QuantumState + ?Sized>(state: &Q, quantity: Quantity, systems: Vec<Vec<String>>) -> Result<Self> {
        let value = match (quantity, systems.as_slice()) {
            (Quantity::Entropy, [x]) => entropy(state, x)?,
            (Quantity::CondEntropy, [x, y]) => cond_entropy(state, x, y)?,
            (Quantity::MutualInfo, [x, y]) => mutual_info(state, x, y)?,
            (Quantity::CondMutualInfo, [x, y, z]) => cond_mutual_info(state, x, y, z)?,
            _ => return Err(Error::InvalidParameter(format!("{quantity:?} cannot take {} label sets", systems.len()))),
        };
        Ok(Self { quantity, systems, value })
    }
}

/// Shannon entropy (bits) of a spectrum; nonpositive eigenvalues contribute 0.
pub(crate) fn spectrum_entropy(spectrum: &[f64]) -> f64 {
    spectrum.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum::<f64>().max(0.0)
}

pub(crate) fn entropy_at<Q: QuantumState + ?Sized>(state: &Q, positions: &[usize]) -> f64 {
    spectrum_entropy(&state.reduced_spectrum(positions))
}

/// Von Neumann entropy `H(X)` in bits of the reduced state on `systems`.
pub fn entropy<Q: QuantumState + ?Sized, S: AsRef<str>>(state: &Q, systems: &[S]) -> Result<f64> {
    let pos = state.layout().positions(systems)?;
    Ok(entropy_at(state, &pos))
}

fn disjoint_positions<Q: QuantumState + ?Sized, S: AsRef<str>>(state: &Q, sets: &[&[S]]) -> Result<Vec<Vec<usize>>> {
    let layout = state.layout();
    let mut seen: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(sets.len());
    for set in sets {
        let pos = layout.positions(set)?;
        if let Some(p) = pos.iter().find(|p| seen.contains(p)) {
            return Err(Error::OverlappingLabels(layout.labels()[*p].clone()));
        }
        seen.extend_from_slice(&pos);
        out.push(pos);
    }
    Ok(out)
}

fn union(sets: &[&Vec<usize>]) -> Vec<usize> {
    let mut u: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    u.sort_unstable();
    u
}

/// `H(X|Y) = H(XY) - H(Y)`.
pub fn cond_entropy<Q: QuantumState + ?Sized, S: AsRef<str>>(state: &Q, x: &[S], given: &[S]) -> Result<f64> {
    let p = disjoint_positions(state, &[x, given])?;
    Ok(entropy_at(state, &union(&[&p[0], &p[1]])) - entropy_at(state, &p[1]))
}

/// `I(X;Y) = H(X) + H(Y) - H(XY)`.
pub fn mutual_info<Q: QuantumState + ?Sized, S: AsRef<str>>(state: &Q, x: &[S], y: &[S]) -> Result<f64> {
    let p = disjoint_positions(state, &[x, y])?;
    Ok(entropy_at(state, &p[0]) + entropy_at(state, &p[1]) - entropy_at(state, &union(&[&p[0], &p[1]])))
}

/// `I(X;Y|Z) = I(X;YZ) - I(X;Z)`, evaluated as `H(XZ) + H(YZ) - H(XYZ) - H(Z)`.
pub fn cond_mutual_info<Q: QuantumState + ?Sized, S: AsRef<str>>(
    state: &Q,
    x: &[S],
    y: &[S],
    given: &[S],
) -> Result<f64> {
    let p = disjoint_positions(state, &[x, y, given])?;
    let (px, py, pz) = (&p[0], &p[1], &p[2]);
    Ok(entropy_at(state, &union(&[px, pz])) + entropy_at(state, &union(&[py, pz]))
        - entropy_at(state, &union(&[px, py, pz]))
        - entropy_at(state, pz))
}

/// `½‖ρ − σ‖₁` from the eigenvalues of the difference.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.layout() != sigma.layout() {
        return Err(Error::DimensionMismatch(format!(
            "trace distance between {} and {}",
            rho.layout(),
            sigma.layout()
        )));
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok(0.5 * linalg::hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>())
}

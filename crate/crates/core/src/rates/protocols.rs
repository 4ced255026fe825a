//! Rates of the state merging, FQSW and reverse-Shannon protocols, and the
//! bookkeeping of the direct coding part.

use serde::{Deserialize, Serialize};

use crate::qcore::{cond_entropy, mutual_info, QuantumState};
use crate::rates::{build_phi, HelperInstance, LABEL_A, LABEL_C, LABEL_E, LABEL_R};
use crate::Result;

/// State merging of `A` into `B` with reference `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MergingRates {
    /// `H(A|B)`; negative values are ebits generated.
    pub ebit_cost: f64,
    /// `I(A;R)` classical bits.
    pub cbit_cost: f64,
}

/// Fully quantum Slepian-Wolf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FqswRates {
    /// `I(A;R)/2`
    pub qubit_cost: f64,
    /// `I(A;B)/2`
    pub ebit_gain: f64,
}

/// Entanglement-assisted channel simulation with reference `R`, output `B`
/// and environment `E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QrstRates {
    /// `I(R;B)/2`
    pub qubit_cost: f64,
    /// `I(E;B)/2`
    pub ebit_cost: f64,
}

/// `(H(A|B), I(A;R))` for a state on disjoint label sets `a`, `b`, `r`.
pub fn merging_rates<Q: QuantumState + ?Sized>(psi: &Q, a: &[&str], b: &[&str], r: &[&str]) -> Result<MergingRates> {
    Ok(MergingRates { ebit_cost: cond_entropy(psi, a, b)?, cbit_cost: mutual_info(psi, a, r)? })
}

/// `(I(A;R)/2, I(A;B)/2)`.
pub fn fqsw_rates<Q: QuantumState + ?Sized>(psi: &Q, a: &[&str], b: &[&str], r: &[&str]) -> Result<FqswRates> {
    Ok(FqswRates { qubit_cost: 0.5 * mutual_info(psi, a, r)?, ebit_gain: 0.5 * mutual_info(psi, a, b)? })
}

/// `(I(R;B)/2, I(E;B)/2)`.
pub fn qrst_rates<Q: QuantumState + ?Sized>(psi: &Q, r: &[&str], b: &[&str], e: &[&str]) -> Result<QrstRates> {
    Ok(QrstRates { qubit_cost: 0.5 * mutual_info(psi, r, b)?, ebit_cost: 0.5 * mutual_info(psi, e, b)? })
}

/// Resources of the direct part: simulate the helper channel by reverse
/// Shannon with reference `RA`, then merge `A` into the decoder's `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectPartTotal {
    pub helper_qubits: f64,
    pub helper_ebits: f64,
    pub alice_ebits: f64,
}

pub fn direct_part_total(inst: &HelperInstance) -> Result<DirectPartTotal> {
    let phi = build_phi(inst)?;
    let s = phi.state();
    let sim = qrst_rates(s, &[LABEL_R, LABEL_A], &[LABEL_C], &[LABEL_E])?;
    let merge = merging_rates(s, &[LABEL_A], &[LABEL_C], &[LABEL_E, LABEL_R])?;
    Ok(DirectPartTotal { helper_qubits: sim.qubit_cost, helper_ebits: sim.ebit_cost, alice_ebits: merge.ebit_cost })
}

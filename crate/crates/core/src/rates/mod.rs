//! Rate functionals of source compression with a quantum helper.
//!
//! For a source `rho_AB` with purification `psi_ABR` and a helper isometry
//! `U: B -> C ⊗ E`, every functional here is read off the four-party pure
//! state `phi_ACER = (I_RA ⊗ U) psi_ABR`.

mod converse;
mod protocols;

use serde::{Deserialize, Serialize};

pub use converse::{converse_audit, converse_audit_with, AuditCheck, AuditMap, AuditResidual};
pub use protocols::{
    direct_part_total, fqsw_rates, merging_rates, qrst_rates, DirectPartTotal, FqswRates, MergingRates, QrstRates,
};

use crate::channels::{apply_isometry, ChannelParams, StinespringIsometry};
use crate::qcore::{cond_entropy, entropy, mutual_info, purify, DensityOperator, PureState, QuantumState};
use crate::{tol, Error, Result};

pub const LABEL_A: &str = "A";
pub const LABEL_B: &str = "B";
pub const LABEL_C: &str = "C";
pub const LABEL_E: &str = "E";
pub const LABEL_R: &str = "R";

/// A source on `A, B` together with the helper's Stinespring isometry on `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct HelperInstance {
    rho_ab: DensityOperator,
    helper: StinespringIsometry,
}

impl HelperInstance {
    pub fn new(rho_ab: DensityOperator, helper: StinespringIsometry) -> Result<Self> {
        let layout = rho_ab.layout();
        if layout.len() != 2 || !layout.contains(LABEL_A) || !layout.contains(LABEL_B) {
            return Err(Error::InvalidLayout(format!("source must live on labels A, B; got {layout}")));
        }
        let db = layout.dim_of(LABEL_B)?;
        if db != helper.dim_in() {
            return Err(Error::DimensionMismatch(format!(
                "helper expects input dimension {}, B has dimension {db}",
                helper.dim_in()
            )));
        }
        Ok(Self { rho_ab, helper })
    }

    pub fn rho_ab(&self) -> &DensityOperator {
        &self.rho_ab
    }

    pub fn helper(&self) -> &StinespringIsometry {
        &self.helper
    }
}

/// The pure state `phi` on `A, C, E, R`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalPureState {
    phi: PureState,
}

impl GlobalPureState {
    pub fn state(&self) -> &PureState {
        &self.phi
    }

    fn h(&self, labels: &[&str]) -> f64 {
        entropy(&self.phi, labels).expect("phi carries A, C, E, R")
    }
}

/// An `(R1, R2)` pair per source copy: Alice's net ebit consumption (negative
/// means entanglement is generated) and the helper's qubit rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1: f64,
    pub r2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ChannelParams>,
}

/// Purifies `rho_AB` with reference `R` and dilates `B` into `C, E`.
pub fn build_phi(inst: &HelperInstance) -> Result<GlobalPureState> {
    let psi = purify(&inst.rho_ab, LABEL_R)?;
    let phi = apply_isometry(&psi, &inst.helper, LABEL_B, (LABEL_C, LABEL_E))?;
    Ok(GlobalPureState { phi })
}

/// `r1 = H(A|C)`, `r2 = I(RA;C)/2`.
pub fn theorem2_rates(phi: &GlobalPureState) -> RatePoint {
    let s = &phi.phi;
    let r1 = cond_entropy(s, &[LABEL_A], &[LABEL_C]).expect("phi carries A, C");
    let r2 = 0.5 * mutual_info(s, &[LABEL_R, LABEL_A], &[LABEL_C]).expect("phi carries R, A, C");
    RatePoint { r1, r2, params: None }
}

/// Cost of simply compressing the helper output: `H(C)`.
pub fn naive_rate(phi: &GlobalPureState) -> f64 {
    phi.h(&[LABEL_C])
}

/// `|H(C) - I(C;E)/2 - I(C;RA)/2|`, zero for every pure `phi`.
pub fn decomposition_check(phi: &GlobalPureState) -> f64 {
    let s = &phi.phi;
    let hc = phi.h(&[LABEL_C]);
    let ice = mutual_info(s, &[LABEL_C], &[LABEL_E]).expect("phi carries C, E");
    let icra = mutual_info(s, &[LABEL_C], &[LABEL_R, LABEL_A]).expect("phi carries C, R, A");
    (hc - 0.5 * ice - 0.5 * icra).abs()
}

/// Serialized rate report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub r1: f64,
    pub r2: f64,
    pub naive: f64,
    pub residuals: ReportResiduals,
    pub direct_part: DirectPartTotal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportResiduals {
    /// `|H(C) - I(C;E)/2 - I(C;RA)/2|`
    pub decomposition: f64,
    /// `H(ACER)`, zero for a pure global state.
    pub global_purity: f64,
    /// `|r1 - alice_ebits| + |r2 - helper_qubits|`
    pub direct_part: f64,
}

impl RateReport {
    pub fn compute(inst: &HelperInstance) -> Result<Self> {
        let phi = build_phi(inst)?;
        let rates = theorem2_rates(&phi);
        let direct = direct_part_total(inst)?;
        let global_purity = phi.h(&[LABEL_A, LABEL_C, LABEL_E, LABEL_R]);
        debug_assert!(global_purity <= tol::ENT);
        Ok(Self {
            r1: rates.r1,
            r2: rates.r2,
            naive: naive_rate(&phi),
            residuals: ReportResiduals {
                decomposition: decomposition_check(&phi),
                global_purity,
                direct_part: (rates.r1 - direct.alice_ebits).abs() + (rates.r2 - direct.helper_qubits).abs(),
            },
            direct_part: direct,
        })
    }
}

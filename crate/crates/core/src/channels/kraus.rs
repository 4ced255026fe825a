use crate::linalg::{self, CMatrix, ZERO};
use crate::qcore::{DensityOperator, QuantumState, SystemLayout};
use crate::{tol, Error, Result};

/// A completely positive trace-preserving map given by Kraus operators, each
/// `dim_out x dim_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMatrix>,
}

impl KrausChannel {
    /// Checks shapes and the completeness relation `sum K^dagger K = I`.
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidParameter("empty Kraus family".into()))?;
        let (dim_out, dim_in) = first.shape();
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidParameter("zero-sized Kraus operator".into()));
        }
        if kraus.iter().any(|k| k.shape() != (dim_out, dim_in)) {
            return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
        }
        let mut sum = CMatrix::from_element(dim_in, dim_in, ZERO);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let defect = linalg::max_abs(&(sum - CMatrix::identity(dim_in, dim_in)));
        if defect > tol::NUM {
            return Err(Error::NotTracePreserving(defect));
        }
        Ok(Self { dim_in, dim_out, kraus })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `sum_k K_k rho K_k^dagger` on a bare matrix.
    pub fn apply_matrix(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "channel input dimension {} vs matrix {}x{}",
                self.dim_in,
                rho.nrows(),
                rho.ncols()
            )));
        }
        let mut out = CMatrix::from_element(self.dim_out, self.dim_out, ZERO);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }
}

/// Applies `channel` to subsystem `on`, relabelling its output `out_label`.
pub fn apply_channel(
    state: &DensityOperator,
    channel: &KrausChannel,
    on: &str,
    out_label: &str,
) -> Result<DensityOperator> {
    let layout = state.layout();
    let pos = layout.position(on)?;
    if layout.dims()[pos] != channel.dim_in {
        return Err(Error::DimensionMismatch(format!(
            "`{on}` has dimension {}, channel expects {}",
            layout.dims()[pos],
            channel.dim_in
        )));
    }
    let out_layout = SystemLayout::single(out_label, channel.dim_out)?;
    let mut acc: Option<CMatrix> = None;
    let mut new_layout = None;
    for k in &channel.kraus {
        let term = state.apply_local(pos, k, &out_layout)?;
        acc = Some(match acc {
            Some(m) => m + term.matrix(),
            None => term.matrix().clone(),
        });
        new_layout.get_or_insert_with(|| term.layout().clone());
    }
    let matrix = linalg::hermitian_part(&acc.expect("nonempty Kraus family"));
    Ok(DensityOperator::from_parts_unchecked(new_layout.expect("nonempty Kraus family"), matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real;

    #[test]
    fn incomplete_family_rejected() {
        let half = CMatrix::identity(2, 2) * real(0.5);
        assert!(matches!(KrausChannel::new(vec![half]), Err(Error::NotTracePreserving(_))));
        assert!(KrausChannel::new(vec![]).is_err());
        let a = CMatrix::identity(2, 2);
        let b = CMatrix::zeros(3, 2);
        assert!(matches!(KrausChannel::new(vec![a, b]), Err(Error::DimensionMismatch(_))));
    }
}

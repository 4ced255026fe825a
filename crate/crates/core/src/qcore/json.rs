use serde::{Deserialize, Serialize};

use crate::linalg::{c, CMatrix, CVector};
use crate::qcore::{DensityOperator, PureState, QuantumState, SystemLayout};
use crate::{Error, Result};

/// Row-major complex matrix as nested `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

/// Wire form of a state: `{"labels", "dims", "matrix"}` or `{"labels", "dims", "vector"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<[f64; 2]>>,
}

/// Either kind of state, as read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyState {
    Mixed(DensityOperator),
    Pure(PureState),
}

impl QuantumState for AnyState {
    fn layout(&self) -> &SystemLayout {
        match self {
            AnyState::Mixed(s) => s.layout(),
            AnyState::Pure(s) => s.layout(),
        }
    }

    fn reduced_matrix(&self, keep: &[usize]) -> CMatrix {
        match self {
            AnyState::Mixed(s) => s.reduced_matrix(keep),
            AnyState::Pure(s) => s.reduced_matrix(keep),
        }
    }

    fn reduced_spectrum(&self, keep: &[usize]) -> Vec<f64> {
        match self {
            AnyState::Mixed(s) => s.reduced_spectrum(keep),
            AnyState::Pure(s) => s.reduced_spectrum(keep),
        }
    }

    fn to_density(&self) -> DensityOperator {
        match self {
            AnyState::Mixed(s) => s.clone(),
            AnyState::Pure(s) => s.to_density(),
        }
    }
}

impl AnyState {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> StateJson {
        match self {
            AnyState::Mixed(s) => StateJson {
                labels: s.layout().labels().to_vec(),
                dims: s.layout().dims().to_vec(),
                matrix: Some(matrix_to_json(s.matrix())),
                vector: None,
            },
            AnyState::Pure(s) => StateJson {
                labels: s.layout().labels().to_vec(),
                dims: s.layout().dims().to_vec(),
                matrix: None,
                vector: Some(s.vector().iter().map(|z| [z.re, z.im]).collect()),
            },
        }
    }
}

impl TryFrom<StateJson> for AnyState {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        let layout = SystemLayout::new(raw.labels, &raw.dims)?;
        match (raw.matrix, raw.vector) {
            (Some(m), None) => Ok(AnyState::Mixed(DensityOperator::new(layout, matrix_from_json(&m)?)?)),
            (None, Some(v)) => {
                let vec = CVector::from_iterator(v.len(), v.iter().map(|p| c(p[0], p[1])));
                Ok(AnyState::Pure(PureState::new(layout, vec)?))
            }
            _ => Err(Error::InvalidParameter("state needs exactly one of `matrix` or `vector`".into())),
        }
    }
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|col| [m[(r, col)].re, m[(r, col)].im]).collect()).collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("ragged matrix rows".into()));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("non-finite matrix entry".into()));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |r, col| c(rows[r][col][0], rows[r][col][1])))
}

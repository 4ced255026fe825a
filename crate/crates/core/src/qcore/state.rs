use crate::linalg::{self, real, CMatrix, CVector, ZERO};
use crate::qcore::SystemLayout;
use crate::{tol, Error, Result};

/// Common surface of mixed and pure states: everything the entropy calculus
/// needs is a layout and reduced spectra.
pub trait QuantumState {
    fn layout(&self) -> &SystemLayout;

    /// Reduced density matrix on `keep` (layout positions, ascending).
    fn reduced_matrix(&self, keep: &[usize]) -> CMatrix;

    /// Spectrum of the reduced state on `keep`.
    fn reduced_spectrum(&self, keep: &[usize]) -> Vec<f64> {
        if keep.is_empty() {
            return vec![1.0];
        }
        linalg::hermitian_eigenvalues(&self.reduced_matrix(keep))
    }

    fn to_density(&self) -> DensityOperator;

    /// Reduced state on the named subsystems, in layout order.
    fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator> {
        let positions = self.layout().positions(keep)?;
        Ok(DensityOperator { layout: self.layout().sublayout(&positions), matrix: self.reduced_matrix(&positions) })
    }
}

/// A positive unit-trace matrix over a labelled tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    layout: SystemLayout,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity and unit trace.
    pub fn new(layout: SystemLayout, matrix: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "layout {layout} needs a {d}x{d} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = linalg::hermiticity_defect(&matrix);
        if herm > tol::HERM {
            return Err(Error::NotHermitian(herm));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = linalg::hermitian_eigenvalues(&matrix).first().copied().unwrap_or(0.0);
        if min < -tol::PSD {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { layout, matrix: linalg::hermitian_part(&matrix) })
    }

    /// Maximally mixed state on `layout`.
    pub fn maximally_mixed(layout: SystemLayout) -> Self {
        let d = layout.total_dim();
        let matrix = CMatrix::identity(d, d) * real(1.0 / d as f64);
        Self { layout, matrix }
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(layout: SystemLayout, probs: &[f64]) -> Result<Self> {
        if probs.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} probabilities for dimension {}",
                probs.len(),
                layout.total_dim()
            )));
        }
        let diag = CVector::from_iterator(probs.len(), probs.iter().map(|&p| real(p)));
        Self::new(layout, CMatrix::from_diagonal(&diag))
    }

    pub(crate) fn from_parts_unchecked(layout: SystemLayout, matrix: CMatrix) -> Self {
        Self { layout, matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Same matrix under a different set of labels (dimensions must agree).
    pub fn relabel(&self, layout: SystemLayout) -> Result<Self> {
        if layout.dims() != self.layout.dims() {
            return Err(Error::DimensionMismatch(format!("cannot relabel {} as {layout}", self.layout)));
        }
        Ok(Self { layout, matrix: self.matrix.clone() })
    }

    pub fn spectrum(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Conjugate by an operator acting on the subsystem at `pos`, replacing it
    /// with `out_layout`.
    pub(crate) fn apply_local(&self, pos: usize, op: &CMatrix, out_layout: &SystemLayout) -> Result<Self> {
        let full = embed_local(&self.layout, pos, op)?;
        let layout = self.layout.splice(pos, out_layout)?;
        let matrix = &full * &self.matrix * full.adjoint();
        Ok(Self { layout, matrix: linalg::hermitian_part(&matrix) })
    }
}

impl QuantumState for DensityOperator {
    fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    fn reduced_matrix(&self, keep: &[usize]) -> CMatrix {
        if keep.len() == self.layout.len() {
            return self.matrix.clone();
        }
        let dk = self.layout.subset_dim(keep);
        let (kidx, ridx) = self.layout.split_indices(keep);
        let d = self.layout.total_dim();
        let mut out = CMatrix::from_element(dk, dk, ZERO);
        for r in 0..d {
            for col in 0..d {
                if ridx[r] == ridx[col] {
                    out[(kidx[r], kidx[col])] += self.matrix[(r, col)];
                }
            }
        }
        out
    }

    fn to_density(&self) -> DensityOperator {
        self.clone()
    }
}

/// A unit vector over a labelled tensor factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: SystemLayout,
    vector: CVector,
}

impl PureState {
    pub fn new(layout: SystemLayout, vector: CVector) -> Result<Self> {
        if vector.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "layout {layout} needs a vector of length {}, got {}",
                layout.total_dim(),
                vector.len()
            )));
        }
        let norm2 = vector.norm_squared();
        if (norm2 - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidNorm(norm2));
        }
        Ok(Self { layout, vector })
    }

    /// Normalizes `vector` before validation.
    pub fn normalized(layout: SystemLayout, vector: CVector) -> Result<Self> {
        let n = vector.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidNorm(n * n));
        }
        Self::new(layout, vector.unscale(n))
    }

    /// Maximally entangled state `sum_k |kk> / sqrt(d)` on two labels.
    pub fn maximally_entangled(a: &str, b: &str, d: usize) -> Result<Self> {
        let layout = SystemLayout::new([a, b], &[d, d])?;
        let mut v = CVector::from_element(d * d, ZERO);
        for k in 0..d {
            v[k * d + k] = real(1.0 / (d as f64).sqrt());
        }
        Self::new(layout, v)
    }

    /// Computational basis state `|index>`.
    pub fn basis(layout: SystemLayout, index: usize) -> Result<Self> {
        let d = layout.total_dim();
        if index >= d {
            return Err(Error::InvalidParameter(format!("basis index {index} >= {d}")));
        }
        let mut v = CVector::from_element(d, ZERO);
        v[index] = real(1.0);
        Self::new(layout, v)
    }

    pub(crate) fn from_parts_unchecked(layout: SystemLayout, vector: CVector) -> Self {
        Self { layout, vector }
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn relabel(&self, layout: SystemLayout) -> Result<Self> {
        if layout.dims() != self.layout.dims() {
            return Err(Error::DimensionMismatch(format!("cannot relabel {} as {layout}", self.layout)));
        }
        Ok(Self { layout, vector: self.vector.clone() })
    }

    /// Coefficient matrix with rows indexed by `keep` and columns by the rest.
    fn coefficient_matrix(&self, keep: &[usize]) -> CMatrix {
        let rest = self.layout.complement(keep);
        let dk = self.layout.subset_dim(keep);
        let dr = self.layout.subset_dim(&rest);
        let (kidx, ridx) = self.layout.split_indices(keep);
        let mut m = CMatrix::from_element(dk, dr, ZERO);
        for (n, z) in self.vector.iter().enumerate() {
            m[(kidx[n], ridx[n])] = *z;
        }
        m
    }

    pub(crate) fn apply_local(&self, pos: usize, op: &CMatrix, out_layout: &SystemLayout) -> Result<Self> {
        let layout = self.layout.splice(pos, out_layout)?;
        let dims = self.layout.dims();
        let left: usize = dims[..pos].iter().product();
        let right: usize = dims[pos + 1..].iter().product();
        let din = dims[pos];
        let dout = op.nrows();
        if op.ncols() != din {
            return Err(Error::DimensionMismatch(format!(
                "operator has {} columns, subsystem `{}` has dimension {din}",
                op.ncols(),
                self.layout.labels()[pos]
            )));
        }
        let mut out = CVector::from_element(left * dout * right, ZERO);
        for l in 0..left {
            for r in 0..right {
                for o in 0..dout {
                    let mut acc = ZERO;
                    for b in 0..din {
                        acc += op[(o, b)] * self.vector[(l * din + b) * right + r];
                    }
                    out[(l * dout + o) * right + r] = acc;
                }
            }
        }
        Ok(Self { layout, vector: out })
    }
}

impl PureState {
    /// Reorders subsystems so the labels appear in `order` (a permutation of
    /// the current labels).
    pub fn permute<S: AsRef<str>>(&self, order: &[S]) -> Result<PureState> {
        if order.len() != self.layout.len() {
            return Err(Error::InvalidLayout(format!(
                "permutation lists {} labels, layout has {}",
                order.len(),
                self.layout.len()
            )));
        }
        let perm = order.iter().map(|l| self.layout.position(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = perm.iter().map(|&p| self.layout.dims()[p]).collect();
        let labels: Vec<String> = perm.iter().map(|&p| self.layout.labels()[p].clone()).collect();
        let layout = SystemLayout::new(labels, &dims)?;
        let old_dims = self.layout.dims();
        let mut strides = vec![1usize; old_dims.len()];
        for p in (0..old_dims.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * old_dims[p + 1];
        }
        let total = self.layout.total_dim();
        let mut out = CVector::from_element(total, ZERO);
        let mut digits = vec![0usize; dims.len()];
        for n in 0..total {
            let old: usize = digits.iter().zip(&perm).map(|(&d, &p)| d * strides[p]).sum();
            out[n] = self.vector[old];
            for p in (0..dims.len()).rev() {
                digits[p] += 1;
                if digits[p] < dims[p] {
                    break;
                }
                digits[p] = 0;
            }
        }
        Ok(PureState { layout, vector: out })
    }

    /// Fuses the adjacent subsystems `labels` (in layout order) into a single
    /// subsystem named `merged`.
    pub fn merge<S: AsRef<str>>(&self, labels: &[S], merged: &str) -> Result<PureState> {
        let pos = labels.iter().map(|l| self.layout.position(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let first = *pos.first().ok_or_else(|| Error::InvalidLayout("nothing to merge".into()))?;
        if pos.iter().enumerate().any(|(k, &p)| p != first + k) {
            return Err(Error::InvalidLayout("merged subsystems must be adjacent and in order".into()));
        }
        let mut new_labels: Vec<String> = Vec::new();
        let mut new_dims = Vec::new();
        for (p, (l, &d)) in self.layout.labels().iter().zip(self.layout.dims()).enumerate() {
            if p == first {
                new_labels.push(merged.to_string());
                new_dims.push(self.layout.subset_dim(&pos));
            } else if !pos.contains(&p) {
                new_labels.push(l.clone());
                new_dims.push(d);
            }
        }
        Ok(PureState { layout: SystemLayout::new(new_labels, &new_dims)?, vector: self.vector.clone() })
    }
}

impl QuantumState for PureState {
    fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    fn reduced_matrix(&self, keep: &[usize]) -> CMatrix {
        let m = self.coefficient_matrix(keep);
        &m * m.adjoint()
    }

    /// For a global pure state both sides of a cut share their nonzero
    /// spectrum, so the smaller side is diagonalized.
    fn reduced_spectrum(&self, keep: &[usize]) -> Vec<f64> {
        if keep.is_empty() || keep.len() == self.layout.len() {
            return vec![1.0];
        }
        let rest = self.layout.complement(keep);
        let m = self.coefficient_matrix(keep);
        let reduced = if self.layout.subset_dim(keep) <= self.layout.subset_dim(&rest) {
            &m * m.adjoint()
        } else {
            m.adjoint() * &m
        };
        linalg::hermitian_eigenvalues(&reduced)
    }

    fn to_density(&self) -> DensityOperator {
        DensityOperator { layout: self.layout.clone(), matrix: &self.vector * self.vector.adjoint() }
    }
}

/// `I ⊗ op ⊗ I` with `op` acting on position `pos`.
fn embed_local(layout: &SystemLayout, pos: usize, op: &CMatrix) -> Result<CMatrix> {
    let dims = layout.dims();
    if op.ncols() != dims[pos] {
        return Err(Error::DimensionMismatch(format!(
            "operator has {} columns, subsystem `{}` has dimension {}",
            op.ncols(),
            layout.labels()[pos],
            dims[pos]
        )));
    }
    let left: usize = dims[..pos].iter().product();
    let right: usize = dims[pos + 1..].iter().product();
    let l = CMatrix::identity(left, left);
    let r = CMatrix::identity(right, right);
    Ok(linalg::kron(&linalg::kron(&l, op), &r))
}

/// Kronecker product of two states on disjoint label sets.
pub fn tensor(a: &DensityOperator, b: &DensityOperator) -> Result<DensityOperator> {
    let layout = a.layout.concat(&b.layout)?;
    Ok(DensityOperator { layout, matrix: linalg::kron(&a.matrix, &b.matrix) })
}

impl PureState {
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(PureState { layout, vector: linalg::kron_vec(&self.vector, &other.vector) })
    }
}

/// Purification with a reference of dimension `rank(rho)`, appended as the
/// last subsystem `ref_label`.
pub fn purify(rho: &DensityOperator, ref_label: &str) -> Result<PureState> {
    let (vals, vecs) = linalg::hermitian_eigh(&rho.matrix);
    if let Some(&min) = vals.first() {
        if min < -tol::PSD {
            return Err(Error::NotPsd(min));
        }
    }
    let support: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > tol::RANK).collect();
    let rank = support.len().max(1);
    let ref_layout = SystemLayout::single(ref_label, rank)?;
    let layout = rho.layout.concat(&ref_layout)?;
    let d = rho.layout.total_dim();
    let mut v = CVector::from_element(d * rank, ZERO);
    // descending eigenvalue order on the reference
    for (j, &k) in support.iter().rev().enumerate() {
        let w = real(vals[k].sqrt());
        for x in 0..d {
            v[x * rank + j] = vecs[(x, k)] * w;
        }
    }
    PureState::normalized(layout, v)
}

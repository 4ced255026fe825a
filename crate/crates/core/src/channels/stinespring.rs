use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::KrausChannel;
use crate::linalg::{self, CMatrix, ZERO};
use crate::qcore::{random, DensityOperator, PureState, QuantumState, SystemLayout};
use crate::{tol, Error, Result};

/// Isometry `V: B -> C ⊗ E`. Rows are indexed `c * dim_env + e`.
#[derive(Debug, Clone, PartialEq)]
pub struct StinespringIsometry {
    dim_in: usize,
    dim_out: usize,
    dim_env: usize,
    v: CMatrix,
}

impl StinespringIsometry {
    pub fn new(dim_in: usize, dim_out: usize, dim_env: usize, v: CMatrix) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 || dim_env == 0 {
            return Err(Error::InvalidParameter("isometry dimensions must be positive".into()));
        }
        if v.shape() != (dim_out * dim_env, dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "isometry {dim_in} -> {dim_out}x{dim_env} needs a {}x{dim_in} matrix, got {}x{}",
                dim_out * dim_env,
                v.nrows(),
                v.ncols()
            )));
        }
        let defect = linalg::isometry_defect(&v);
        if defect > tol::NUM {
            return Err(Error::NotIsometry(defect));
        }
        Ok(Self { dim_in, dim_out, dim_env, v })
    }

    pub(crate) fn from_parts_unchecked(dim_in: usize, dim_out: usize, dim_env: usize, v: CMatrix) -> Self {
        Self { dim_in, dim_out, dim_env, v }
    }

    /// `V = I ⊗ |0>_E` with a one-dimensional environment.
    pub fn identity(d: usize) -> Self {
        Self { dim_in: d, dim_out: d, dim_env: 1, v: CMatrix::identity(d, d) }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn dim_env(&self) -> usize {
        self.dim_env
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.v
    }

    /// Kraus family `K_e = (I ⊗ <e|) V`, one operator per environment state.
    pub fn to_kraus(&self) -> KrausChannel {
        let kraus = (0..self.dim_env)
            .map(|e| CMatrix::from_fn(self.dim_out, self.dim_in, |c, b| self.v[(c * self.dim_env + e, b)]))
            .collect();
        KrausChannel::new(kraus).expect("isometry yields a complete Kraus family")
    }

    /// `V1 ⊗ V2` regrouped so the output is `(C1 C2) ⊗ (E1 E2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (d1, c1, e1) = (self.dim_in, self.dim_out, self.dim_env);
        let (d2, c2, e2) = (other.dim_in, other.dim_out, other.dim_env);
        let mut v = CMatrix::from_element(c1 * c2 * e1 * e2, d1 * d2, ZERO);
        for b1 in 0..d1 {
            for b2 in 0..d2 {
                for x1 in 0..c1 {
                    for y1 in 0..e1 {
                        let a = self.v[(x1 * e1 + y1, b1)];
                        if a == ZERO {
                            continue;
                        }
                        for x2 in 0..c2 {
                            for y2 in 0..e2 {
                                let row = (x1 * c2 + x2) * (e1 * e2) + (y1 * e2 + y2);
                                v[(row, b1 * d2 + b2)] = a * other.v[(x2 * e2 + y2, b2)];
                            }
                        }
                    }
                }
            }
        }
        Self { dim_in: d1 * d2, dim_out: c1 * c2, dim_env: e1 * e2, v }
    }
}

/// `V|x> = sum_k (K_k|x>) ⊗ |k>_E`, environment dimension = number of Kraus
/// operators.
pub fn kraus_to_stinespring(ch: &KrausChannel) -> StinespringIsometry {
    let n = ch.kraus().len();
    let (dout, din) = (ch.dim_out(), ch.dim_in());
    let v = CMatrix::from_fn(dout * n, din, |row, x| ch.kraus()[row % n][(row / n, x)]);
    StinespringIsometry { dim_in: din, dim_out: dout, dim_env: n, v }
}

/// Haar-distributed isometry from orthonormalizing a complex Gaussian matrix.
pub fn random_isometry(dim_in: usize, dim_out: usize, dim_env: usize, seed: u64) -> Result<StinespringIsometry> {
    let d = dim_out * dim_env;
    if dim_in == 0 || dim_in > d {
        return Err(Error::InvalidParameter(format!("no isometry from dimension {dim_in} into {dim_out}x{dim_env}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random::gaussian_matrix(d, dim_in, &mut rng);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    // fix column phases so the distribution is Haar, not QR-convention dependent
    let mut v = q.columns(0, dim_in).into_owned();
    for k in 0..dim_in {
        let rk = r[(k, k)];
        if rk.norm() > 0.0 {
            let phase = rk / rk.norm();
            let mut col = v.column_mut(k);
            col *= phase;
        }
    }
    Ok(StinespringIsometry { dim_in, dim_out, dim_env, v })
}

/// States that an isometry can act on locally.
pub trait Dilatable: QuantumState + Sized {
    /// Replaces subsystem `on` by `(out_label, env_label)`.
    fn dilate(&self, iso: &StinespringIsometry, on: &str, out_label: &str, env_label: &str) -> Result<Self>;
}

fn check_target(layout: &SystemLayout, iso: &StinespringIsometry, on: &str) -> Result<usize> {
    let pos = layout.position(on)?;
    if layout.dims()[pos] != iso.dim_in {
        return Err(Error::DimensionMismatch(format!(
            "`{on}` has dimension {}, isometry expects {}",
            layout.dims()[pos],
            iso.dim_in
        )));
    }
    Ok(pos)
}

impl Dilatable for PureState {
    fn dilate(&self, iso: &StinespringIsometry, on: &str, out_label: &str, env_label: &str) -> Result<Self> {
        let pos = check_target(self.layout(), iso, on)?;
        let out = SystemLayout::new([out_label, env_label], &[iso.dim_out, iso.dim_env])?;
        self.apply_local(pos, &iso.v, &out)
    }
}

impl Dilatable for DensityOperator {
    fn dilate(&self, iso: &StinespringIsometry, on: &str, out_label: &str, env_label: &str) -> Result<Self> {
        let pos = check_target(self.layout(), iso, on)?;
        let out = SystemLayout::new([out_label, env_label], &[iso.dim_out, iso.dim_env])?;
        self.apply_local(pos, &iso.v, &out)
    }
}

/// Applies `iso` to subsystem `on`, which is replaced in place by the two
/// labels `out_labels = (C, E)`.
pub fn apply_isometry<S: Dilatable>(
    state: &S,
    iso: &StinespringIsometry,
    on: &str,
    out_labels: (&str, &str),
) -> Result<S> {
    state.dilate(iso, on, out_labels.0, out_labels.1)
}

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::channels::StinespringIsometry;
use crate::linalg::{self, c, CMatrix, ZERO};
use crate::{Error, Result};

/// Input, output and environment dimensions of a helper isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelDims {
    pub dim_in: usize,
    pub dim_out: usize,
    pub dim_env: usize,
}

impl ChannelDims {
    /// Environment large enough for any channel, `dim_in * dim_out`.
    pub fn with_default_env(dim_in: usize, dim_out: usize) -> Self {
        Self { dim_in, dim_out, dim_env: dim_in * dim_out }
    }

    /// Side of the unitary whose leading columns form the isometry.
    pub fn unitary_side(&self) -> usize {
        self.dim_out * self.dim_env
    }

    pub fn param_len(&self) -> usize {
        self.unitary_side().pow(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim_in == 0 || self.dim_out == 0 || self.dim_env == 0 {
            return Err(Error::InvalidParameter("channel dimensions must be positive".into()));
        }
        if self.dim_in > self.unitary_side() {
            return Err(Error::InvalidParameter(format!(
                "input dimension {} exceeds output x environment {}x{}",
                self.dim_in, self.dim_out, self.dim_env
            )));
        }
        Ok(())
    }
}

/// Real coordinates of an anti-Hermitian generator `G` of side
/// `D = dim_out * dim_env`: the `D` diagonal imaginary parts first, then the
/// real and imaginary parts of each upper-triangular entry in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    #[serde(flatten)]
    pub dims: ChannelDims,
    pub theta: Vec<f64>,
}

impl ChannelParams {
    pub fn zeros(dims: ChannelDims) -> Self {
        Self { dims, theta: vec![0.0; dims.param_len()] }
    }

    /// Independent normal coordinates with standard deviation `scale`.
    pub fn random<R: Rng + ?Sized>(dims: ChannelDims, scale: f64, rng: &mut R) -> Self {
        let theta = (0..dims.param_len())
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                scale * z
            })
            .collect();
        Self { dims, theta }
    }

    pub fn generator(&self) -> Result<CMatrix> {
        self.dims.validate()?;
        let d = self.dims.unitary_side();
        if self.theta.len() != d * d {
            return Err(Error::InvalidParameter(format!("expected {} parameters, got {}", d * d, self.theta.len())));
        }
        if self.theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("non-finite channel parameter".into()));
        }
        let mut g = CMatrix::from_element(d, d, ZERO);
        for j in 0..d {
            g[(j, j)] = c(0.0, self.theta[j]);
        }
        let mut idx = d;
        for j in 0..d {
            for k in j + 1..d {
                let (a, b) = (self.theta[idx], self.theta[idx + 1]);
                g[(j, k)] = c(a, b);
                g[(k, j)] = c(-a, b);
                idx += 2;
            }
        }
        Ok(g)
    }
}

/// `V` = first `dim_in` columns of `exp(G)`.
pub fn params_to_isometry(p: &ChannelParams) -> Result<StinespringIsometry> {
    let g = p.generator()?;
    let u = linalg::expm(&g);
    let v = u.columns(0, p.dims.dim_in).into_owned();
    Ok(StinespringIsometry::from_parts_unchecked(p.dims.dim_in, p.dims.dim_out, p.dims.dim_env, v))
}

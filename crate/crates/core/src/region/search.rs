use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{params_to_isometry, ChannelDims, ChannelParams, Dilatable};
use crate::qcore::{cond_entropy, mutual_info, purify, DensityOperator, PureState, QuantumState};
use crate::rates::{RatePoint, LABEL_A, LABEL_B, LABEL_C, LABEL_E, LABEL_R};
use crate::region::{task_seed, FrontierConfig};
use crate::{Error, Result};

/// `r2 + lambda * r1` as a function of the helper parameters, with the source
/// purification computed once.
#[derive(Debug, Clone)]
pub struct Objective {
    psi: PureState,
    dims: ChannelDims,
}

impl Objective {
    pub fn new(rho_ab: &DensityOperator, dim_c: usize, dim_e: usize) -> Result<Self> {
        let layout = rho_ab.layout();
        if layout.len() != 2 || !layout.contains(LABEL_A) || !layout.contains(LABEL_B) {
            return Err(Error::InvalidLayout(format!("source must live on labels A, B; got {layout}")));
        }
        let dims = ChannelDims { dim_in: layout.dim_of(LABEL_B)?, dim_out: dim_c, dim_env: dim_e };
        dims.validate()?;
        Ok(Self { psi: purify(rho_ab, LABEL_R)?, dims })
    }

    pub fn dims(&self) -> ChannelDims {
        self.dims
    }

    /// Rate pair for the given parameters (parameters not attached).
    pub fn rates(&self, theta: &[f64]) -> Result<(f64, f64)> {
        let params = ChannelParams { dims: self.dims, theta: theta.to_vec() };
        let v = params_to_isometry(&params)?;
        let phi = self.psi.dilate(&v, LABEL_B, LABEL_C, LABEL_E)?;
        let r1 = cond_entropy(&phi, &[LABEL_A], &[LABEL_C])?;
        let r2 = 0.5 * mutual_info(&phi, &[LABEL_R, LABEL_A], &[LABEL_C])?;
        Ok((r1, r2))
    }

    pub fn value(&self, theta: &[f64], lambda: f64) -> Result<f64> {
        let (r1, r2) = self.rates(theta)?;
        Ok(r2 + lambda * r1)
    }
}

/// `J = r2 + lambda * r1` for one parameter vector.
pub fn scalarized_objective(rho_ab: &DensityOperator, params: &ChannelParams, lambda: f64) -> Result<f64> {
    let obj = Objective::new(rho_ab, params.dims.dim_out, params.dims.dim_env)?;
    if obj.dims != params.dims {
        return Err(Error::DimensionMismatch(format!(
            "parameters expect input dimension {}, source B has {}",
            params.dims.dim_in, obj.dims.dim_in
        )));
    }
    obj.value(&params.theta, lambda)
}

/// Result of one restart, or the best over restarts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOutcome {
    pub point: RatePoint,
    pub objective: f64,
    pub converged: bool,
    pub iters: usize,
    pub restart: usize,
}

/// Exploratory coordinate moves of size `step` around `base`; returns the
/// improved point and its value if any move helped.
fn explore(obj: &Objective, lambda: f64, base: &[f64], f_base: f64, step: f64) -> Result<(Vec<f64>, f64)> {
    let mut x = base.to_vec();
    let mut fx = f_base;
    for k in 0..x.len() {
        let orig = x[k];
        for delta in [step, -step] {
            x[k] = orig + delta;
            let f = obj.value(&x, lambda)?;
            if f < fx {
                fx = f;
                break;
            }
            x[k] = orig;
        }
    }
    Ok((x, fx))
}

/// Hooke-Jeeves pattern search from one seeded random start.
pub(crate) fn run_restart(
    obj: &Objective,
    lambda: f64,
    cfg: &FrontierConfig,
    seed: u64,
    restart: usize,
) -> Result<MinimizeOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = ChannelParams::random(obj.dims, cfg.init_scale, &mut rng);
    let mut base = start.theta;
    let mut f_base = obj.value(&base, lambda)?;
    let mut step = cfg.initial_step;
    let mut iters = 0;
    let mut converged = false;

    while iters < cfg.max_iters {
        iters += 1;
        let (x, fx) = explore(obj, lambda, &base, f_base, step)?;
        if fx < f_base {
            let gain = f_base - fx;
            // pattern move: jump along the improving direction and explore there
            let jump: Vec<f64> = x.iter().zip(&base).map(|(xn, xb)| 2.0 * xn - xb).collect();
            let f_jump = obj.value(&jump, lambda)?;
            let (xp, fp) = explore(obj, lambda, &jump, f_jump, step)?;
            if fp < fx {
                base = xp;
                f_base = fp;
            } else {
                base = x;
                f_base = fx;
            }
            if gain < cfg.obj_tol {
                converged = true;
                break;
            }
        } else {
            step *= 0.5;
            if step < cfg.step_tol {
                converged = true;
                break;
            }
        }
    }

    let (r1, r2) = obj.rates(&base)?;
    Ok(MinimizeOutcome {
        point: RatePoint { r1, r2, params: Some(ChannelParams { dims: obj.dims, theta: base }) },
        objective: f_base,
        converged,
        iters,
        restart,
    })
}

/// Lowest objective; ties go to the earliest restart.
pub(crate) fn best_of(runs: &[MinimizeOutcome]) -> &MinimizeOutcome {
    runs.iter().reduce(|best, r| if r.objective < best.objective { r } else { best }).expect("at least one restart")
}

/// Best of `cfg.restarts` seeded pattern searches for a single weight.
/// Restart seeds match those `trace_frontier` uses for lambda index 0.
pub fn minimize(rho_ab: &DensityOperator, lambda: f64, cfg: &FrontierConfig) -> Result<MinimizeOutcome> {
    cfg.validate()?;
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda {lambda} must be finite and nonnegative")));
    }
    let obj = Objective::new(rho_ab, cfg.dim_c, cfg.dim_e)?;
    let runs = (0..cfg.restarts)
        .map(|r| run_restart(&obj, lambda, cfg, task_seed(cfg.seed, 0, r), r))
        .collect::<Result<Vec<_>>>()?;
    Ok(best_of(&runs).clone())
}

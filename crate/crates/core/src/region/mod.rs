//! Pareto frontier of the helper rate region.
//!
//! Each weight `lambda` minimizes `r2 + lambda * r1` over helper isometries
//! with a derivative-free pattern search; the resulting points are then
//! convexified (time sharing) into the lower-left boundary.

mod hull;
mod search;

pub use hull::{lower_left_hull, HullPoint};
pub use search::{minimize, scalarized_objective, MinimizeOutcome, Objective};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qcore::{DensityOperator, QuantumState};
use crate::rates::{RatePoint, LABEL_B};
use crate::{Error, Result};

/// Settings for one frontier trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierConfig {
    pub dim_c: usize,
    pub dim_e: usize,
    pub lambda_grid: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
    /// Cap on pattern-search sweeps per restart.
    pub max_iters: usize,
    /// Stop once the pattern step falls below this.
    pub step_tol: f64,
    /// Stop once a successful sweep improves the objective by less than this.
    pub obj_tol: f64,
    /// Initial pattern step.
    pub initial_step: f64,
    /// Standard deviation of the random starting parameters.
    pub init_scale: f64,
}

impl FrontierConfig {
    /// Defaults for helper output dimension `dim_c` and environment `dim_e`.
    pub fn new(dim_c: usize, dim_e: usize) -> Self {
        Self {
            dim_c,
            dim_e,
            lambda_grid: vec![0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 64.0],
            restarts: 8,
            seed: 0,
            max_iters: 4000,
            step_tol: 1e-7,
            obj_tol: 1e-13,
            initial_step: 0.5,
            init_scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.dim_c == 0 || self.dim_e == 0 {
            return bad("dim_c and dim_e must be positive");
        }
        if self.lambda_grid.is_empty() {
            return bad("lambda grid is empty");
        }
        if self.lambda_grid.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return bad("lambda values must be finite and nonnegative");
        }
        if self.lambda_grid.windows(2).any(|w| w[0] > w[1]) {
            return bad("lambda grid must be sorted ascending");
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return bad("restarts and max_iters must be positive");
        }
        for (name, v) in [
            ("step_tol", self.step_tol),
            ("obj_tol", self.obj_tol),
            ("initial_step", self.initial_step),
            ("init_scale", self.init_scale),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// The optimizer's answer for one weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub lambda: f64,
    pub r1: f64,
    pub r2: f64,
    pub objective: f64,
    /// False when the winning restart ran out of iterations.
    pub converged: bool,
    pub iters: usize,
    pub restart: usize,
    pub params: crate::channels::ChannelParams,
}

impl FrontierPoint {
    pub fn rate_point(&self) -> RatePoint {
        RatePoint { r1: self.r1, r2: self.r2, params: Some(self.params.clone()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierResult {
    pub config: FrontierConfig,
    /// One entry per lambda, in grid order.
    pub points: Vec<FrontierPoint>,
    /// Lower-left convex boundary, sorted by `r2` ascending.
    pub hull: Vec<HullPoint>,
}

impl FrontierResult {
    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }

    /// Smallest `r1` reachable by time sharing along the hull at helper rate
    /// `r2`; `None` below the hull's smallest `r2`.
    pub fn hull_r1_at(&self, r2: f64) -> Option<f64> {
        hull::envelope_at(&self.hull, r2)
    }

    /// Whether the hull reaches `(r2, r1)` or better, within `eps` on `r1`.
    pub fn dominates(&self, r2: f64, r1: f64, eps: f64) -> bool {
        match self.hull_r1_at(r2 + eps) {
            Some(h) => h <= r1 + eps,
            None => false,
        }
    }
}

/// Deterministic per-task seed from the run seed, lambda index and restart.
pub(crate) fn task_seed(seed: u64, lambda_index: usize, restart: usize) -> u64 {
    let mut z = seed
        ^ (lambda_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (restart as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One `minimize` per lambda, run in parallel and collected in grid order,
/// followed by the hull pass.
pub fn trace_frontier(rho_ab: &DensityOperator, cfg: &FrontierConfig) -> Result<FrontierResult> {
    cfg.validate()?;
    let objective = Objective::new(rho_ab, cfg.dim_c, cfg.dim_e)?;
    let tasks: Vec<(usize, usize)> =
        (0..cfg.lambda_grid.len()).flat_map(|li| (0..cfg.restarts).map(move |r| (li, r))).collect();
    let runs: Vec<MinimizeOutcome> = tasks
        .par_iter()
        .map(|&(li, r)| search::run_restart(&objective, cfg.lambda_grid[li], cfg, task_seed(cfg.seed, li, r), r))
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::with_capacity(cfg.lambda_grid.len());
    for (li, chunk) in runs.chunks(cfg.restarts).enumerate() {
        let best = search::best_of(chunk);
        points.push(FrontierPoint {
            lambda: cfg.lambda_grid[li],
            r1: best.point.r1,
            r2: best.point.r2,
            objective: best.objective,
            converged: best.converged,
            iters: best.iters,
            restart: best.restart,
            params: best.point.params.clone().expect("search attaches parameters"),
        });
    }
    let hull = lower_left_hull(&points);
    Ok(FrontierResult { config: cfg.clone(), points, hull })
}

/// `dim_c >= dim_B`, i.e. the helper can forward `B` unchanged.
pub fn can_forward(rho_ab: &DensityOperator, dim_c: usize) -> bool {
    rho_ab.layout().dim_of(LABEL_B).map(|db| dim_c >= db).unwrap_or(false)
}

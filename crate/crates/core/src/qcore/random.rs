//! Seeded random states: Haar-random pure states and full-rank Ginibre mixed
//! states.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c, real, CMatrix, CVector};
use crate::qcore::{DensityOperator, PureState, SystemLayout};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-random pure state on `layout`.
pub fn random_pure<R: Rng + ?Sized>(layout: SystemLayout, rng: &mut R) -> PureState {
    let d = layout.total_dim();
    let v = CVector::from_fn(d, |_, _| complex_gaussian(rng));
    let n = v.norm();
    PureState::from_parts_unchecked(layout, v.unscale(n))
}

/// Mixed state `G G^dagger / tr(G G^dagger)` with a square complex Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(layout: SystemLayout, rng: &mut R) -> DensityOperator {
    let d = layout.total_dim();
    let g = gaussian_matrix(d, d, rng);
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    let m = m * real(1.0 / tr);
    DensityOperator::from_parts_unchecked(layout, crate::linalg::hermitian_part(&m))
}

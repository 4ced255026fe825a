//! Dense complex linear algebra helpers: Hermitian spectra, matrix exponential,
//! Kronecker products.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part of
/// `m` is used.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)].re],
        _ => {
            let h = hermitian_part(m);
            let mut vals: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
            vals.sort_by(f64::total_cmp);
            vals
        }
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; the
/// matching eigenvectors are the columns of the returned matrix.
pub fn hermitian_eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (vals, vecs)
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * real(0.5)
}

/// Largest elementwise modulus of `m - m^dagger`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// `max |V^dagger V - I|` over entries.
pub fn isometry_defect(v: &CMatrix) -> f64 {
    let gram = v.adjoint() * v;
    max_abs(&(gram - CMatrix::identity(v.ncols(), v.ncols())))
}

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter().map(|col| col.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

const TAYLOR_ORDER: usize = 18;
const SCALED_NORM: f64 = 0.5;

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
///
/// The argument is scaled so its 1-norm is at most 1/2; the order-18 remainder
/// is then below `0.5^19 / 19!`, far under double precision.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as u32 } else { 0 };
    let scaled = a * real(0.5f64.powi(squarings as i32));

    // Horner: I + A(I + A/2(I + A/3(...)))
    let identity = CMatrix::identity(n, n);
    let mut acc = identity.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        acc = &identity + (&scaled * acc) * real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| c(StandardNormal.sample(rng), StandardNormal.sample(rng)))
    }

    // Eigenvalues of the real 2n x 2n embedding [[Re, -Im], [Im, Re]] are those
    // of the Hermitian matrix, each repeated twice.
    fn embedded_eigenvalues(h: &CMatrix) -> Vec<f64> {
        let n = h.nrows();
        let emb = DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, col| {
            let z = h[(r % n, col % n)];
            match (r < n, col < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        let mut vals: Vec<f64> = emb.symmetric_eigenvalues().iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
    }

    #[test]
    fn eigenvalues_agree_with_real_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 3, 5, 8, 16, 32, 64] {
            let g = random_matrix(n, &mut rng);
            let h = hermitian_part(&g);
            let a = hermitian_eigenvalues(&h);
            let b = embedded_eigenvalues(&h);
            let scale = a.iter().map(|x| x.abs()).fold(1.0, f64::max);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() <= 1e-10 * scale, "n={n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn eigh_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = hermitian_part(&random_matrix(6, &mut rng));
        let (vals, vecs) = hermitian_eigh(&h);
        let d = CMatrix::from_diagonal(&CVector::from_iterator(6, vals.iter().map(|&v| real(v))));
        let back = &vecs * d * vecs.adjoint();
        assert!(max_abs(&(back - h)) < 1e-12);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = CMatrix::zeros(4, 4);
        assert_eq!(expm(&z), CMatrix::identity(4, 4));
    }

    #[test]
    fn expm_matches_spectral_route_on_anti_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 4, 8, 16, 32] {
            let h = hermitian_part(&random_matrix(n, &mut rng)) * real(3.0);
            let g = &h * I;
            let (vals, vecs) = hermitian_eigh(&h);
            let phases = CVector::from_iterator(n, vals.iter().map(|&v| Complex64::from_polar(1.0, v)));
            let oracle = &vecs * CMatrix::from_diagonal(&phases) * vecs.adjoint();
            let got = expm(&g);
            assert!(max_abs(&(got.clone() - oracle)) < 1e-12, "n={n}");
            assert!(isometry_defect(&got) < 1e-12);
        }
    }

    #[test]
    fn expm_scalar() {
        let a = CMatrix::from_element(1, 1, c(1.0, 2.0));
        let e = expm(&a);
        assert!((e[(0, 0)] - c(1.0, 2.0).exp()).norm() < 1e-14);
    }
}

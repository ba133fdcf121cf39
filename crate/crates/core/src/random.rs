//! Seeded random sources. Every sampler in the crate draws from a
//! [`ChaCha8Rng`] so results are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{normalized, orthonormalize_columns, ComplexMatrix, C};
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C::new(T::c(re), T::c(im))
}

/// Uniform point on the unit sphere of `C^dim`.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C<T>> {
    loop {
        let v: Vec<C<T>> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        if crate::linalg::vec_norm(&v) > T::c(1e-6) {
            return normalized(&v);
        }
    }
}

/// Haar-distributed unitary from the QR factorization of a Ginibre matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix<T> {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    orthonormalize_columns(&g)
}

/// Uniform angle in `[-pi, pi)`.
pub fn random_angle<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let u: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    T::c(u)
}

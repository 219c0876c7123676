//! Shared fixtures for the criterion benches.

use matconvex::random::{random_contraction_tuple, random_hermitian, random_isometry, rng_from_seed};
use matconvex::sets::sign_vectors;
use matconvex::{HermMatrix, HermTuple};

pub fn hermitian(n: usize, seed: u64) -> HermMatrix {
    random_hermitian(&mut rng_from_seed(seed), n)
}

pub fn contractions(d: usize, n: usize, seed: u64) -> HermTuple {
    random_contraction_tuple(&mut rng_from_seed(seed), d, n)
}

/// `V*NV` with `N` diagonal over the cube vertices, each repeated `n` times.
pub fn cube_compression(d: usize, n: usize, seed: u64) -> HermTuple {
    let pts: Vec<Vec<f64>> = sign_vectors(d).into_iter().flat_map(|p| std::iter::repeat_n(p, n)).collect();
    let v = random_isometry(&mut rng_from_seed(seed), pts.len(), n);
    let mats = (0..d).map(|i| HermMatrix::from_diag(&pts.iter().map(|p| p[i]).collect::<Vec<_>>()).compress(&v)).collect();
    HermTuple::new(mats).expect("equal sizes")
}

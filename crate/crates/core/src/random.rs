//! Seeded random generators for matrices, tuples and POVMs.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{herm_opnorm, CMatrix, HermMatrix};
use crate::tuple::{GenTuple, HermTuple};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermMatrix {
    HermMatrix::symmetrize(&random_complex(rng, n, n))
}

pub fn random_real_symmetric(rng: &mut impl Rng, n: usize) -> HermMatrix {
    let m = CMatrix::from_fn(n, n, |_, _| Complex64::new(gaussian(rng), 0.0));
    HermMatrix::symmetrize(&m)
}

/// Uniformly distributed unit vector in ℝᵈ.
pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Isometry `ℂ^small → ℂ^big` from Gram–Schmidt on Gaussian columns.
pub fn random_isometry(rng: &mut impl Rng, big: usize, small: usize) -> CMatrix {
    assert!(small <= big, "isometry needs small <= big");
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(small);
    while cols.len() < small {
        let mut v: Vec<Complex64> = (0..big).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let ip: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= ip * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_columns(big, &cols)
}

pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    random_isometry(rng, n, n)
}

/// Hermitian matrix rescaled to operator norm `norm`.
pub fn random_hermitian_with_norm(rng: &mut impl Rng, n: usize, norm: f64) -> HermMatrix {
    let m = random_hermitian(rng, n);
    let current = herm_opnorm(&m).expect("finite random matrix");
    if current == 0.0 {
        return m;
    }
    m.scale(norm / current)
}

/// Tuple of Hermitian contractions with norms drawn uniformly from `(0, 1]`.
pub fn random_contraction_tuple(rng: &mut impl Rng, d: usize, n: usize) -> HermTuple {
    let mats = (0..d)
        .map(|_| {
            let target = 1.0 - rng.random::<f64>();
            random_hermitian_with_norm(rng, n, target)
        })
        .collect();
    HermTuple::new(mats).expect("consistent sizes")
}

/// Tuple of general contractions with norms drawn uniformly from `(0, 1]`.
pub fn random_general_contraction_tuple(rng: &mut impl Rng, d: usize, n: usize) -> GenTuple {
    let mats = (0..d)
        .map(|_| {
            let m = random_complex(rng, n, n);
            let norm = crate::linalg::opnorm(&m).expect("finite random matrix");
            let target = 1.0 - rng.random::<f64>();
            m.scale(target / norm)
        })
        .collect();
    GenTuple::new(mats).expect("consistent sizes")
}

/// Random member of the matrix ball: `ΣXⱼ² ≤ t·I` with `t` uniform in `(0, 1]`.
pub fn random_ball_member(rng: &mut impl Rng, d: usize, n: usize) -> HermTuple {
    let raw = HermTuple::new((0..d).map(|_| random_hermitian(rng, n)).collect()).expect("consistent sizes");
    let mut sq = HermMatrix::zeros(n);
    for m in raw.iter() {
        sq = sq.add(&m.square());
    }
    let top = herm_opnorm(&sq).expect("finite");
    let t = 1.0 - rng.random::<f64>();
    raw.scale((t / top).sqrt())
}

/// Random finite POVM on ℂⁿ with `m` effects: `Aⱼ = S^{-1/2} Gⱼ S^{-1/2}` for Gaussian PSD `Gⱼ`.
pub fn random_povm_effects(rng: &mut impl Rng, n: usize, m: usize) -> Vec<HermMatrix> {
    let gs: Vec<HermMatrix> = (0..m)
        .map(|_| {
            let g = random_complex(rng, n, n);
            HermMatrix::symmetrize(&g.matmul(&g.adjoint()))
        })
        .collect();
    let mut sum = HermMatrix::zeros(n);
    for g in &gs {
        sum = sum.add(g);
    }
    let inv_sqrt = crate::linalg::herm_eig(&sum).expect("finite").apply(|l| 1.0 / l.sqrt());
    gs.iter().map(|g| g.compress(&inv_sqrt)).collect()
}

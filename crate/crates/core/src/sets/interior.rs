use crate::error::Result;
use crate::linalg::max_eig;
use crate::random::{gaussian, random_unit_vector, rng_from_seed};
use crate::tuple::HermTuple;

/// Default number of random directions for [`zero_interior_range`].
pub const DEFAULT_DIRECTIONS: usize = 512;
/// Default number of local refinement steps.
pub const DEFAULT_REFINE_STEPS: usize = 200;

/// Estimate of `min_{‖u‖=1} λ_max(Σ uᵢAᵢ)` by sampling and local refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorEstimate {
    /// Positive margin reports `0 ∈ int W₁(A)`.
    pub interior: bool,
    pub margin: f64,
    /// Direction attaining the margin.
    pub direction: Vec<f64>,
}

fn directional_max(a: &HermTuple, u: &[f64]) -> Result<f64> {
    max_eig(&a.combination(u))
}

fn normalize(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// Randomized, seeded test for `0 ∈ int W₁(A)`, equivalently boundedness of `D_A(1)`.
///
/// Directions `±eᵢ` are always included. The margin is an upper estimate of the true minimum,
/// so a positive answer is not certified.
pub fn zero_interior_range(a: &HermTuple, samples: usize, refine_steps: usize, seed: u64) -> Result<InteriorEstimate> {
    let d = a.d();
    let mut rng = rng_from_seed(seed);
    let mut dirs: Vec<Vec<f64>> = Vec::with_capacity(2 * d + samples);
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[i] = s;
            dirs.push(e);
        }
    }
    dirs.extend((0..samples).map(|_| random_unit_vector(&mut rng, d)));
    let mut best = (f64::INFINITY, dirs[0].clone());
    for u in dirs {
        let m = directional_max(a, &u)?;
        if m < best.0 {
            best = (m, u);
        }
    }
    let mut step = 0.5;
    for _ in 0..refine_steps {
        let trial = normalize(best.1.iter().map(|x| x + step * gaussian(&mut rng)).collect());
        let m = directional_max(a, &trial)?;
        if m < best.0 {
            best = (m, trial);
        } else {
            step *= 0.95;
        }
    }
    let scale = a.max_norm()?.max(1.0);
    Ok(InteriorEstimate { interior: best.0 > 1e-10 * scale, margin: best.0, direction: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::HermMatrix;

    #[test]
    fn pauli_pair_has_unit_margin() {
        let a = HermTuple::from_real(&[vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![vec![1.0, 0.0], vec![0.0, -1.0]]]).unwrap();
        let est = zero_interior_range(&a, 64, 50, 0).unwrap();
        assert!(est.interior);
        assert!((est.margin - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_pair_is_not_interior() {
        let a = HermTuple::new(vec![HermMatrix::identity(2), HermMatrix::identity(2)]).unwrap();
        let est = zero_interior_range(&a, 64, 200, 0).unwrap();
        assert!(!est.interior);
        assert!(est.margin < -1.3);
    }

    #[test]
    fn zero_tuple_is_not_interior() {
        let est = zero_interior_range(&HermTuple::zeros(3, 2), 16, 10, 0).unwrap();
        assert!(!est.interior);
        assert_eq!(est.margin, 0.0);
    }
}

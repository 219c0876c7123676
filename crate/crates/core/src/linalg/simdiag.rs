use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::eig::{herm_eig, opnorm};
use super::matrix::{CMatrix, HermMatrix};
use crate::error::{Error, Result};
use crate::random::rng_from_seed;

/// Relative clustering tolerance for eigenvalues of the mixing combination.
pub const CLUSTER_TOL: f64 = 1e-8;

const MIXING_SEED: u64 = 0x5EED_D1A6;

/// Joint eigenvalue tuples of a commuting family, one point per basis vector.
///
/// Normal (non-Hermitian) families are represented through their Hermitian real and
/// imaginary parts, so a complex point in ℂᵈ is stored as `(Re z₁, Im z₁, …)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointSpectrum {
    pub points: Vec<Vec<f64>>,
}

impl JointSpectrum {
    pub fn new(points: Vec<Vec<f64>>) -> Self {
        JointSpectrum { points }
    }

    /// Total multiplicity, equal to the ambient dimension.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points merged within `tol` (max-norm), with multiplicities.
    pub fn grouped(&self, tol: f64) -> Vec<(Vec<f64>, usize)> {
        let mut out: Vec<(Vec<f64>, usize)> = Vec::new();
        for p in &self.points {
            match out.iter_mut().find(|(q, _)| max_dist(p, q) <= tol) {
                Some(entry) => entry.1 += 1,
                None => out.push((p.clone(), 1)),
            }
        }
        out
    }

    /// Multiset equality up to `tol` in the max-norm.
    pub fn multiset_eq(&self, other: &JointSpectrum, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        for p in &self.points {
            let hit = other
                .points
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, q)| (k, max_dist(p, q)))
                .filter(|&(_, dist)| dist <= tol)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match hit {
                Some((k, _)) => used[k] = true,
                None => return false,
            }
        }
        true
    }

    /// Lexicographically sorted copy, for stable reporting.
    pub fn sorted(&self) -> JointSpectrum {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        JointSpectrum { points: pts }
    }
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Largest pairwise commutator norm and the pair attaining it.
pub fn max_commutator(ts: &[CMatrix]) -> Result<(f64, usize, usize)> {
    let mut worst = (0.0, 0, 0);
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            let c = ts[i].commutator(&ts[j]);
            if c.max_abs() == 0.0 {
                continue;
            }
            let norm = opnorm(&c)?;
            if norm > worst.0 {
                worst = (norm, i, j);
            }
        }
    }
    Ok(worst)
}

fn is_diagonal(m: &CMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].norm() == 0.0))
}

/// Unitary `U` with every `U*TᵢU` diagonal, and the diagonal tuples as a joint spectrum.
///
/// Commutators are checked against `tol·max(1, max‖Tᵢ‖)²`. Degenerate eigenspaces are split by
/// recursing on eigenspaces of a seeded random real combination of the family.
pub fn simultaneous_diagonalize(ts: &[HermMatrix], tol: f64) -> Result<(CMatrix, JointSpectrum)> {
    let Some(first) = ts.first() else {
        return Err(Error::InvalidInput("empty family".into()));
    };
    let n = first.dim();
    if ts.iter().any(|t| t.dim() != n) {
        return Err(Error::DimensionMismatch("family members must share one size".into()));
    }
    if ts.iter().all(|t| is_diagonal(t)) {
        let points = (0..n).map(|r| ts.iter().map(|t| t[(r, r)].re).collect()).collect();
        return Ok((CMatrix::identity(n), JointSpectrum { points }));
    }
    let scale = ts.iter().map(|t| opnorm(t)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
    let mats: Vec<CMatrix> = ts.iter().map(|t| t.as_cmatrix().clone()).collect();
    let (norm, i, j) = max_commutator(&mats)?;
    if norm > tol * scale.max(1.0).powi(2) {
        return Err(Error::NotCommuting { i, j, norm });
    }
    let cluster = CLUSTER_TOL * scale.max(f64::MIN_POSITIVE);
    let mut rng = rng_from_seed(MIXING_SEED);
    let mut columns: Vec<Vec<num_complex::Complex64>> = Vec::with_capacity(n);
    split(ts, &CMatrix::identity(n), cluster, &mut rng, &mut columns)?;
    let u = CMatrix::from_columns(n, &columns);
    let points = columns
        .iter()
        .map(|col| {
            ts.iter()
                .map(|t| {
                    let tv = t.mul_vec(col);
                    col.iter().zip(&tv).map(|(a, b)| a.conj() * b).sum::<num_complex::Complex64>().re
                })
                .collect()
        })
        .collect();
    Ok((u, JointSpectrum { points }))
}

fn is_scalar(m: &CMatrix, tol: f64) -> bool {
    let k = m.rows();
    if k <= 1 {
        return true;
    }
    let mean = m.trace().re / k as f64;
    (0..k).all(|i| (0..k).all(|j| {
        let target = if i == j { mean } else { 0.0 };
        (m[(i, j)] - target).norm() <= tol
    }))
}

fn split(
    ts: &[HermMatrix],
    basis: &CMatrix,
    cluster: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
    out: &mut Vec<Vec<num_complex::Complex64>>,
) -> Result<()> {
    let k = basis.cols();
    let compressed: Vec<HermMatrix> = ts.iter().map(|t| t.compress(basis)).collect();
    if k == 1 || compressed.iter().all(|c| is_scalar(c, cluster)) {
        out.extend((0..k).map(|c| basis.column(c)));
        return Ok(());
    }
    let coeffs: Vec<f64> = (0..ts.len()).map(|_| rng.sample(StandardNormal)).collect();
    let mut mix = HermMatrix::zeros(k);
    for (c, t) in coeffs.iter().zip(&compressed) {
        mix = mix.add_scaled(*c, t);
    }
    let mut groups = eigen_clusters(&mix, cluster)?;
    if groups.len() == 1 {
        let member = compressed.iter().find(|c| !is_scalar(c, cluster)).expect("some member is non-scalar");
        groups = eigen_clusters(member, cluster)?;
        if groups.len() == 1 {
            out.extend((0..k).map(|c| basis.column(c)));
            return Ok(());
        }
    }
    for q in groups {
        split(ts, &basis.matmul(&q), cluster, rng, out)?;
    }
    Ok(())
}

/// Eigenvector blocks of `m` grouped by eigenvalue gaps larger than `cluster`.
fn eigen_clusters(m: &HermMatrix, cluster: f64) -> Result<Vec<CMatrix>> {
    let e = herm_eig(m)?;
    let mut groups = Vec::new();
    let mut start = 0;
    for idx in 1..=e.dim() {
        if idx == e.dim() || e.eigenvalues[idx] - e.eigenvalues[idx - 1] > cluster {
            let cols: Vec<usize> = (start..idx).collect();
            groups.push(e.eigenvectors.select_columns(&cols));
            start = idx;
        }
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_unitary;

    #[test]
    fn diagonal_family_is_returned_exactly() {
        let ts = vec![HermMatrix::from_diag(&[1.0, 2.0]), HermMatrix::from_diag(&[3.0, 4.0])];
        let (u, js) = simultaneous_diagonalize(&ts, 1e-10).unwrap();
        assert_eq!(u, CMatrix::identity(2));
        assert_eq!(js.points, vec![vec![1.0, 3.0], vec![2.0, 4.0]]);
    }

    #[test]
    fn flip_with_identity() {
        let f = HermMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (_, js) = simultaneous_diagonalize(&[f, HermMatrix::identity(2)], 1e-10).unwrap();
        assert!(js.multiset_eq(&JointSpectrum::new(vec![vec![-1.0, 1.0], vec![1.0, 1.0]]), 1e-12));
    }

    #[test]
    fn rejects_non_commuting_pair() {
        let x = HermMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let z = HermMatrix::from_diag(&[1.0, -1.0]);
        match simultaneous_diagonalize(&[x, z], 1e-10) {
            Err(Error::NotCommuting { i: 0, j: 1, norm }) => assert!((norm - 2.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotated_degenerate_family() {
        let mut rng = rng_from_seed(11);
        let u = random_unitary(&mut rng, 5);
        let d1 = [1.0, 1.0, 1.0, -1.0, -1.0];
        let d2 = [2.0, 2.0, 0.0, 0.0, 0.0];
        let conj = |d: &[f64]| HermMatrix::symmetrize(&u.matmul(&CMatrix::from_diag_real(d)).matmul(&u.adjoint()));
        let ts = vec![conj(&d1), conj(&d2)];
        let (w, js) = simultaneous_diagonalize(&ts, 1e-10).unwrap();
        for t in &ts {
            let dd = t.compress(&w);
            for i in 0..5 {
                for j in 0..5 {
                    if i != j {
                        assert!(dd[(i, j)].norm() < 1e-10);
                    }
                }
            }
        }
        let expected = JointSpectrum::new(d1.iter().zip(&d2).map(|(a, b)| vec![*a, *b]).collect());
        assert!(js.multiset_eq(&expected, 1e-10));
    }
}

use num_complex::Complex64;

use super::matrix::{CMatrix, HermMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching unitary eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `Q f(Λ) Q*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermMatrix {
        let n = self.dim();
        let q = &self.eigenvectors;
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n, n);
        for (k, &v) in vals.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            for i in 0..n {
                let qi = q[(i, k)] * v;
                for j in 0..n {
                    out[(i, j)] += qi * q[(j, k)].conj();
                }
            }
        }
        HermMatrix::symmetrize(&out)
    }

    pub fn reconstruct(&self) -> HermMatrix {
        self.apply(|l| l)
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies the unitary `G` acting on coordinates `(p, q)` from the right: columns p and q.
#[inline]
fn rotate_columns(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let ec = e.conj();
    for r in 0..m.rows() {
        let mp = m[(r, p)];
        let mq = m[(r, q)];
        m[(r, p)] = mp * c - mq * ec * s;
        m[(r, q)] = mp * s + mq * ec * c;
    }
}

#[inline]
fn rotate_rows(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let n = m.cols();
    for col in 0..n {
        let bp = m[(p, col)];
        let bq = m[(q, col)];
        m[(p, col)] = bp * c - bq * e * s;
        m[(q, col)] = bp * s + bq * e * c;
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Sweeps visit `(p, q)` pairs in row-major order, so the result is deterministic.
pub fn herm_eig(m: &HermMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.as_cmatrix().clone();
    let mut q = CMatrix::identity(n);
    let norm = a.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }
    let target = f64::EPSILON * norm;
    let mut converged = n <= 1 || norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for r in p + 1..n {
                let apq = a[(p, r)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(r, r)].re;
                if sweeps > 4 && app.abs() + 100.0 * mag == app.abs() && aqq.abs() + 100.0 * mag == aqq.abs() {
                    a[(p, r)] = Complex64::new(0.0, 0.0);
                    a[(r, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let e = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate_columns(&mut a, p, r, c, s, e);
                rotate_rows(&mut a, p, r, c, s, e);
                a[(p, r)] = Complex64::new(0.0, 0.0);
                a[(r, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(r, r)].im = 0.0;
                rotate_columns(&mut q, p, r, c, s, e);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, residual: off_norm(&a) });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = q.select_columns(&order);
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

pub fn eigenvalues(m: &HermMatrix) -> Result<Vec<f64>> {
    Ok(herm_eig(m)?.eigenvalues)
}

pub fn min_eig(m: &HermMatrix) -> Result<f64> {
    Ok(herm_eig(m)?.min())
}

pub fn max_eig(m: &HermMatrix) -> Result<f64> {
    Ok(herm_eig(m)?.max())
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let gram = if m.rows() >= m.cols() { m.adjoint().matmul(m) } else { m.matmul(&m.adjoint()) };
    let mut vals: Vec<f64> = eigenvalues(&HermMatrix::symmetrize(&gram))?.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    vals.reverse();
    Ok(vals)
}

/// Largest singular value.
pub fn opnorm(m: &CMatrix) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    if m.is_square() && m.is_hermitian(0.0) {
        return herm_opnorm(&HermMatrix::symmetrize(m));
    }
    Ok(singular_values(m)?[0])
}

/// `max |λ|` for Hermitian input.
pub fn herm_opnorm(m: &HermMatrix) -> Result<f64> {
    if m.dim() == 0 {
        return Ok(0.0);
    }
    let e = herm_eig(m)?;
    Ok(e.min().abs().max(e.max().abs()))
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
pub fn project_psd(m: &HermMatrix) -> Result<HermMatrix> {
    let e = herm_eig(m)?;
    if e.min() >= 0.0 {
        return Ok(m.clone());
    }
    Ok(e.apply(|l| l.max(0.0)))
}

/// PSD square root after clipping negative eigenvalues at 0.
pub fn psd_sqrt(m: &HermMatrix) -> Result<HermMatrix> {
    Ok(herm_eig(m)?.apply(|l| l.max(0.0).sqrt()))
}

/// Moore–Penrose pseudoinverse of a Hermitian matrix; eigenvalues below `rel_tol·max|λ|` are dropped.
pub fn herm_pinv(m: &HermMatrix, rel_tol: f64) -> Result<HermMatrix> {
    let e = herm_eig(m)?;
    let scale = e.min().abs().max(e.max().abs());
    let cut = rel_tol * scale;
    Ok(e.apply(|l| if l.abs() > cut && l != 0.0 { 1.0 / l } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, rng_from_seed};

    fn herm(rows: &[Vec<f64>]) -> HermMatrix {
        HermMatrix::from_real_rows(rows).unwrap()
    }

    fn check_decomposition(m: &HermMatrix, e: &EigenDecomposition) {
        let q = &e.eigenvectors;
        let scale = 1.0 + m.frobenius_norm();
        let qq = q.adjoint().matmul(q);
        assert!((&qq - &CMatrix::identity(m.dim())).max_abs() < 1e-10);
        let lam = CMatrix::from_diag_real(&e.eigenvalues);
        let resid = &m.matmul(q) - &q.matmul(&lam);
        assert!(resid.max_abs() < 1e-10 * scale);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = herm_eig(&HermMatrix::identity(2)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);
        check_decomposition(&HermMatrix::identity(2), &e);
    }

    #[test]
    fn flip_matrix_eigenvalues() {
        let f = herm(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = herm_eig(&f).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        check_decomposition(&f, &e);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        let m = herm(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        let e = herm_eig(&m).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_entries() {
        // [[2, i],[−i, 2]] has eigenvalues 1 and 3.
        let m = HermMatrix::new(CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => Complex64::new(0.0, 1.0),
            (1, 0) => Complex64::new(0.0, -1.0),
            _ => Complex64::new(2.0, 0.0),
        }))
        .unwrap();
        let e = herm_eig(&m).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 3.0).abs() < 1e-14);
        check_decomposition(&m, &e);
    }

    #[test]
    fn min_eig_and_opnorm_examples() {
        assert_eq!(min_eig(&HermMatrix::identity(3)).unwrap(), 1.0);
        assert_eq!(min_eig(&HermMatrix::from_diag(&[-3.0, 5.0])).unwrap(), -3.0);
        let n = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
        assert!((opnorm(&n).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = rng_from_seed(7);
        for n in [1, 2, 3, 5, 8, 17, 40] {
            let m = random_hermitian(&mut rng, n);
            let e = herm_eig(&m).unwrap();
            check_decomposition(&m, &e);
            assert!(e.reconstruct().sub(&m).max_abs() < 1e-10 * (1.0 + m.frobenius_norm()));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = rng_from_seed(3);
        let u = crate::random::random_unitary(&mut rng, 6);
        let d = CMatrix::from_diag_real(&[1.0, 1.0, 1.0, -2.0, -2.0, 0.0]);
        let m = HermMatrix::symmetrize(&u.matmul(&d).matmul(&u.adjoint()));
        let e = herm_eig(&m).unwrap();
        let expect = [-2.0, -2.0, 0.0, 1.0, 1.0, 1.0];
        for (a, b) in e.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        check_decomposition(&m, &e);
    }

    #[test]
    fn psd_projection_and_sqrt() {
        let m = HermMatrix::from_diag(&[4.0, -1.0]);
        let p = project_psd(&m).unwrap();
        assert!((p.as_cmatrix() - &CMatrix::from_diag_real(&[4.0, 0.0])).max_abs() < 1e-15);
        let r = psd_sqrt(&m).unwrap();
        assert!((r[(0, 0)].re - 2.0).abs() < 1e-15 && r[(1, 1)].norm() < 1e-15);
    }
}

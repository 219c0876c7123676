use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{herm_pinv, CMatrix, HermMatrix};
use crate::tuple::HermTuple;

/// Frobenius-nearest-point map onto an affine subspace of block lists.
pub trait AffineProjector: Sync {
    /// Sizes of the Hermitian blocks the projector acts on.
    fn block_dims(&self) -> &[usize];

    /// Closest point of the affine set; idempotent.
    fn project(&self, blocks: &[HermMatrix]) -> Vec<HermMatrix>;

    /// Largest absolute violation of the affine constraints.
    fn residual(&self, blocks: &[HermMatrix]) -> f64;

    /// Distance of the right-hand side from the range of the constraint operator;
    /// positive values mean the affine set is empty.
    fn inconsistency(&self) -> f64 {
        0.0
    }
}

/// Solver for an underdetermined complex system `M x = h` in the least-norm sense.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    m: CMatrix,
    pinv: CMatrix,
    range_proj: CMatrix,
}

impl LinearSystem {
    /// Precomputes `M⁺ = M*(MM*)⁺`.
    pub fn new(m: CMatrix) -> Result<Self> {
        let gram = HermMatrix::symmetrize(&m.matmul(&m.adjoint()));
        let gram_pinv = herm_pinv(&gram, 1e-12)?;
        let pinv = m.adjoint().matmul(gram_pinv.as_cmatrix());
        let range_proj = m.matmul(&pinv);
        Ok(LinearSystem { m, pinv, range_proj })
    }

    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    pub fn cols(&self) -> usize {
        self.m.cols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// `x ← x − M⁺(Mx − h)`.
    pub fn project(&self, x: &mut [Complex64], h: &[Complex64]) {
        let mut r = self.m.mul_vec(x);
        for (ri, hi) in r.iter_mut().zip(h) {
            *ri -= hi;
        }
        let corr = self.pinv.mul_vec(&r);
        for (xi, ci) in x.iter_mut().zip(corr) {
            *xi -= ci;
        }
    }

    pub fn residual(&self, x: &[Complex64], h: &[Complex64]) -> f64 {
        self.m.mul_vec(x).iter().zip(h).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `‖MM⁺h − h‖_∞`, zero exactly when `h` is in the range of `M`.
    pub fn inconsistency(&self, h: &[Complex64]) -> f64 {
        self.range_proj.mul_vec(h).iter().zip(h).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// How the entrywise unknown vectors sit inside the block list.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// `N` blocks of size n; entry (r,s) gathers `(K_v[r,s])_v`.
    Povm { count: usize },
    /// One block of size k·m; entry (r,s) gathers `(C[a·m+r, b·m+s])_{a,b}`.
    Choi { k: usize },
}

/// Affine sets whose constraints decouple over the entries `(r, s)` of an n×n grid, all sharing
/// one coefficient matrix and differing only in the right-hand side.
#[derive(Debug, Clone)]
pub struct EntrywiseAffine {
    dims: Vec<usize>,
    n: usize,
    layout: Layout,
    system: LinearSystem,
    /// Right-hand sides, indexed by `r·n + s`.
    rhs: Vec<Vec<Complex64>>,
    inconsistency: f64,
}

impl EntrywiseAffine {
    fn build(dims: Vec<usize>, n: usize, layout: Layout, m: CMatrix, rhs: Vec<Vec<Complex64>>) -> Result<Self> {
        let system = LinearSystem::new(m)?;
        let inconsistency = rhs.iter().map(|h| system.inconsistency(h)).fold(0.0, f64::max);
        Ok(EntrywiseAffine { dims, n, layout, system, rhs, inconsistency })
    }

    fn gather(&self, blocks: &[HermMatrix], r: usize, s: usize) -> Vec<Complex64> {
        match self.layout {
            Layout::Povm { count } => (0..count).map(|v| blocks[v][(r, s)]).collect(),
            Layout::Choi { k } => {
                let m = self.n;
                let c = &blocks[0];
                let mut out = Vec::with_capacity(k * k);
                for a in 0..k {
                    for b in 0..k {
                        out.push(c[(a * m + r, b * m + s)]);
                    }
                }
                out
            }
        }
    }

    fn scatter(&self, out: &mut [CMatrix], r: usize, s: usize, x: &[Complex64]) {
        match self.layout {
            Layout::Povm { .. } => {
                for (v, z) in x.iter().enumerate() {
                    out[v][(r, s)] = *z;
                }
            }
            Layout::Choi { k } => {
                let m = self.n;
                for a in 0..k {
                    for b in 0..k {
                        out[0][(a * m + r, b * m + s)] = x[a * k + b];
                    }
                }
            }
        }
    }

    /// Number of scalar constraints per entry.
    pub fn constraints_per_entry(&self) -> usize {
        self.system.rows()
    }
}

impl AffineProjector for EntrywiseAffine {
    fn block_dims(&self) -> &[usize] {
        &self.dims
    }

    fn project(&self, blocks: &[HermMatrix]) -> Vec<HermMatrix> {
        let mut out: Vec<CMatrix> = blocks.iter().map(|b| b.as_cmatrix().clone()).collect();
        for r in 0..self.n {
            for s in 0..self.n {
                let mut x = self.gather(blocks, r, s);
                self.system.project(&mut x, &self.rhs[r * self.n + s]);
                self.scatter(&mut out, r, s, &x);
            }
        }
        out.iter().map(HermMatrix::symmetrize).collect()
    }

    fn residual(&self, blocks: &[HermMatrix]) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            for s in 0..self.n {
                let x = self.gather(blocks, r, s);
                worst = worst.max(self.system.residual(&x, &self.rhs[r * self.n + s]));
            }
        }
        worst
    }

    fn inconsistency(&self) -> f64 {
        self.inconsistency
    }
}

fn delta(r: usize, s: usize) -> Complex64 {
    Complex64::new(if r == s { 1.0 } else { 0.0 }, 0.0)
}

/// Projector onto `{(K_v) : Σ K_v = I, Σ v K_v = X}` for the given points `v ∈ ℝᵈ`.
pub fn affine_projector_povm(vertices: &[Vec<f64>], x: &HermTuple) -> Result<EntrywiseAffine> {
    let d = x.d();
    if vertices.is_empty() {
        return Err(Error::InvalidInput("at least one vertex is required".into()));
    }
    if let Some(i) = vertices.iter().position(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(format!("vertex {i} has dimension {}, tuple has d = {d}", vertices[i].len())));
    }
    let count = vertices.len();
    let n = x.n();
    let m = CMatrix::from_fn(d + 1, count, |i, v| Complex64::new(if i == 0 { 1.0 } else { vertices[v][i - 1] }, 0.0));
    let mut rhs = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            let mut h = vec![delta(r, s)];
            h.extend(x.iter().map(|xi| xi[(r, s)]));
            rhs.push(h);
        }
    }
    EntrywiseAffine::build(vec![n; count], n, Layout::Povm { count }, m, rhs)
}

/// Projector onto Choi matrices `C ∈ M_k ⊗ M_m` of maps with `φ(I) = I` and `φ(Aᵢ) = Bᵢ`.
///
/// `C[a·m+r, b·m+s] = φ(E_ab)[r,s]`, so `φ(A)[r,s] = Σ_ab A[a,b]·C[a·m+r, b·m+s]` and the
/// constraints decouple over target entries `(r, s)`.
pub fn affine_projector_choi(a: &HermTuple, b: &HermTuple) -> Result<EntrywiseAffine> {
    if a.d() != b.d() {
        return Err(Error::DimensionMismatch(format!("source has d = {}, target has d = {}", a.d(), b.d())));
    }
    let k = a.n();
    let m = b.n();
    let rows = a.d() + 1;
    let mat = CMatrix::from_fn(rows, k * k, |t, idx| {
        let (p, q) = (idx / k, idx % k);
        if t == 0 {
            delta(p, q)
        } else {
            a.get(t - 1)[(p, q)]
        }
    });
    let mut rhs = Vec::with_capacity(m * m);
    for r in 0..m {
        for s in 0..m {
            let mut h = vec![delta(r, s)];
            h.extend(b.iter().map(|bi| bi[(r, s)]));
            rhs.push(h);
        }
    }
    EntrywiseAffine::build(vec![k * m], m, Layout::Choi { k }, mat, rhs)
}

/// `φ(A)` for the map with Choi matrix `C ∈ M_k ⊗ M_m`.
pub fn apply_choi(c: &CMatrix, k: usize, m: usize, a: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(m, m);
    for p in 0..k {
        for q in 0..k {
            let coef = a[(p, q)];
            if coef.norm() == 0.0 {
                continue;
            }
            for r in 0..m {
                for s in 0..m {
                    out[(r, s)] += coef * c[(p * m + r, q * m + s)];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_diff(a: &[HermMatrix], b: &[HermMatrix]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x.sub(y).max_abs()).fold(0.0, f64::max)
    }

    #[test]
    fn symmetric_pair_projects_to_halves() {
        let x = HermTuple::scalar(&[0.0]).unwrap();
        let p = affine_projector_povm(&[vec![-1.0], vec![1.0]], &x).unwrap();
        let out = p.project(&[HermMatrix::zeros(1), HermMatrix::zeros(1)]);
        assert!((out[0][(0, 0)].re - 0.5).abs() < 1e-15 && (out[1][(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn diamond_vertices_at_origin_give_quarters() {
        let verts = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let x = HermTuple::zeros(2, 2);
        let p = affine_projector_povm(&verts, &x).unwrap();
        let out = p.project(&vec![HermMatrix::zeros(2); 4]);
        for k in &out {
            assert!(k.sub(&HermMatrix::identity(2).scale(0.25)).max_abs() < 1e-14);
        }
    }

    #[test]
    fn projection_is_idempotent_and_feasible() {
        let verts = vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]];
        let mut rng = crate::random::rng_from_seed(5);
        let x = crate::random::random_contraction_tuple(&mut rng, 2, 3);
        let p = affine_projector_povm(&verts, &x).unwrap();
        let start: Vec<HermMatrix> = (0..4).map(|_| crate::random::random_hermitian(&mut rng, 3)).collect();
        let once = p.project(&start);
        let twice = p.project(&once);
        assert!(p.residual(&once) < 1e-12);
        assert!(max_diff(&once, &twice) < 1e-12);
        assert!(p.inconsistency() < 1e-12);
    }

    #[test]
    fn inconsistent_system_is_flagged() {
        // Both vertices equal 1, so Σ v K_v = I forces X = I.
        let x = HermTuple::scalar(&[0.0]).unwrap();
        let p = affine_projector_povm(&[vec![1.0], vec![1.0]], &x).unwrap();
        assert!((p.inconsistency() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn choi_of_identity_map_is_feasible() {
        let a = HermTuple::from_real(&[vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![vec![1.0, 0.0], vec![0.0, -1.0]]]).unwrap();
        let p = affine_projector_choi(&a, &a).unwrap();
        // Choi matrix of the identity map on M₂: C[a·2+r, b·2+s] = δ_ar δ_bs.
        let c = CMatrix::from_fn(4, 4, |i, j| {
            let (aa, r, bb, s) = (i / 2, i % 2, j / 2, j % 2);
            Complex64::new(if aa == r && bb == s { 1.0 } else { 0.0 }, 0.0)
        });
        let blocks = vec![HermMatrix::symmetrize(&c)];
        assert!(p.residual(&blocks) < 1e-14);
        assert!(max_diff(&p.project(&blocks), &blocks) < 1e-14);
        let id = apply_choi(&c, 2, 2, a.get(0));
        assert!((&id - a.get(0).as_cmatrix()).max_abs() < 1e-15);
    }
}

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::flip::CONTRACTION_TOL;
use super::{DilatedTuple, Dilation};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMatrix, HermMatrix, JointSpectrum};
use crate::sdp::{lp_feasible, LpProblem};
use crate::sets::{wmax_margin, Facet, Polytope};
use crate::tuple::{GenTuple, HermTuple};

/// Relative bound on the second singular value in the rank-one test.
pub const RANK_ONE_TOL: f64 = 1e-9;

const IDENTITY_TOL: f64 = 1e-9;

/// Rank-one real `d×d` matrices `λ⁽ᵖ⁾` with convex weights `β` such that `Σ βₚλ⁽ᵖ⁾ = I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaFamily {
    pub lambdas: Vec<Vec<Vec<f64>>>,
    pub betas: Vec<f64>,
}

impl LambdaFamily {
    /// Validates shapes, rank one, the weights and the identity reconstruction.
    pub fn new(lambdas: Vec<Vec<Vec<f64>>>, betas: Vec<f64>) -> Result<Self> {
        check_lambdas(&lambdas)?;
        if betas.len() != lambdas.len() {
            return Err(Error::DimensionMismatch(format!("{} weights for {} matrices", betas.len(), lambdas.len())));
        }
        if betas.iter().any(|b| !b.is_finite() || *b < -IDENTITY_TOL) || (betas.iter().sum::<f64>() - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::InvalidInput("weights must be nonnegative and sum to 1".into()));
        }
        let fam = LambdaFamily { lambdas, betas };
        if fam.identity_residual() > IDENTITY_TOL {
            return Err(Error::IdentityNotInHull);
        }
        Ok(fam)
    }

    pub fn d(&self) -> usize {
        self.lambdas[0].len()
    }

    pub fn k(&self) -> usize {
        self.lambdas.len()
    }

    /// Largest entry of `|Σ βₚλ⁽ᵖ⁾ − I|`.
    pub fn identity_residual(&self) -> f64 {
        let d = self.d();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let s: f64 = self.lambdas.iter().zip(&self.betas).map(|(l, b)| b * l[i][j]).sum();
                worst = worst.max((s - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    /// Factors `λ⁽ᵖ⁾ = uₚwₚᵀ` by pivoting on the largest entry.
    pub fn factors(&self) -> Vec<(Vec<f64>, Vec<f64>)> {
        self.lambdas.iter().map(|l| rank_one_factor(l)).collect()
    }

    /// `λ⁽ᵐ⁾ = d·eₘeₘᵀ` with uniform weights.
    pub fn coordinate(d: usize) -> LambdaFamily {
        let lambdas = (0..d).map(|m| (0..d).map(|i| (0..d).map(|j| if i == m && j == m { d as f64 } else { 0.0 }).collect()).collect()).collect();
        LambdaFamily { lambdas, betas: vec![1.0 / d as f64; d] }
    }
}

fn check_lambdas(lambdas: &[Vec<Vec<f64>>]) -> Result<()> {
    let d = lambdas.first().map(|l| l.len()).ok_or_else(|| Error::InvalidInput("empty λ family".into()))?;
    if d == 0 {
        return Err(Error::InvalidInput("λ matrices must be nonempty".into()));
    }
    for (index, l) in lambdas.iter().enumerate() {
        if l.len() != d || l.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch(format!("λ matrix {index} is not {d}×{d}")));
        }
        if l.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let ratio = rank_one_ratio(l);
        if ratio > RANK_ONE_TOL {
            return Err(Error::NotRankOne { index, ratio });
        }
    }
    Ok(())
}

/// Upper bound `√d·‖λ − uwᵀ‖_F / ‖λ‖_F` on `σ₂/σ₁`, from the pivoted factorization.
fn rank_one_ratio(l: &[Vec<f64>]) -> f64 {
    let (u, w) = rank_one_factor(l);
    let (mut res, mut norm) = (0.0, 0.0);
    for (i, row) in l.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            res += (x - u[i] * w[j]).powi(2);
            norm += x * x;
        }
    }
    if norm == 0.0 {
        0.0
    } else {
        (l.len() as f64 * res / norm).sqrt()
    }
}

fn rank_one_factor(l: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let d = l.len();
    let (mut r, mut c, mut best) = (0, 0, 0.0);
    for (i, row) in l.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x.abs() > best {
                (r, c, best) = (i, j, x.abs());
            }
        }
    }
    if best == 0.0 {
        return (vec![0.0; d], vec![0.0; d]);
    }
    let u = l.iter().map(|row| row[c]).collect();
    let w = l[r].iter().map(|x| x / l[r][c]).collect();
    (u, w)
}

/// Convex weights with `Σ βₚλ⁽ᵖ⁾ = I`, the first found by the simplex method.
pub fn decompose_identity(lambdas: Vec<Vec<Vec<f64>>>) -> Result<LambdaFamily> {
    check_lambdas(&lambdas)?;
    let d = lambdas[0].len();
    let k = lambdas.len();
    let mut a = vec![vec![1.0; k]];
    let mut b = vec![1.0];
    for i in 0..d {
        for j in 0..d {
            a.push(lambdas.iter().map(|l| l[i][j]).collect());
            b.push(if i == j { 1.0 } else { 0.0 });
        }
    }
    let out = lp_feasible(&LpProblem::new(a, b, vec![true; k])?)?;
    let betas = out.witness.ok_or(Error::IdentityNotInHull)?;
    LambdaFamily::new(lambdas, betas.into_iter().map(|x| x.max(0.0)).collect())
}

fn lambda_parts(x: &HermTuple, fam: &LambdaFamily) -> Result<(HermTuple, CMatrix)> {
    if fam.d() != x.d() {
        return Err(Error::DimensionMismatch(format!("λ family has d = {}, tuple has d = {}", fam.d(), x.d())));
    }
    let (n, k, d) = (x.n(), fam.k(), x.d());
    let ts = (0..d)
        .into_par_iter()
        .map(|i| {
            let mut t = CMatrix::zeros(n * k, n * k);
            for (p, l) in fam.lambdas.iter().enumerate() {
                for (j, xj) in x.iter().enumerate() {
                    let c = l[i][j];
                    if c == 0.0 {
                        continue;
                    }
                    for r in 0..n {
                        for s in 0..n {
                            t[(r * k + p, s * k + p)] += xj[(r, s)] * c;
                        }
                    }
                }
            }
            HermMatrix::symmetrize(&t)
        })
        .collect();
    let v = CMatrix::from_fn(n * k, n, |row, col| {
        if row / k == col {
            Complex64::new(fam.betas[row % k].sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((HermTuple::new(ts)?, v))
}

/// `Tᵢ = Σⱼ Xⱼ ⊗ diag(λ⁽¹⁾ᵢⱼ, …, λ⁽ᵏ⁾ᵢⱼ)` on `ℂⁿ ⊗ ℂᵏ` with `V h = h ⊗ Σ √βₚ eₚ`.
///
/// Block `p` of `Tᵢ` is `Σⱼ λ⁽ᵖ⁾ᵢⱼXⱼ`, so the tuple commutes whenever every `λ⁽ᵖ⁾` has rank one.
pub fn lambda_dilation(x: &HermTuple, fam: &LambdaFamily) -> Result<Dilation> {
    let (t, v) = lambda_parts(x, fam)?;
    Dilation::self_adjoint(t, v, 1.0, x)
}

/// Joint spectrum of [`lambda_dilation`] block by block: `{uₚ·μ : μ ∈ σ(Σⱼ (wₚ)ⱼXⱼ)}`.
pub fn joint_spectrum_rank_one(fam: &LambdaFamily, x: &HermTuple) -> Result<JointSpectrum> {
    if fam.d() != x.d() {
        return Err(Error::DimensionMismatch(format!("λ family has d = {}, tuple has d = {}", fam.d(), x.d())));
    }
    let mut points = Vec::with_capacity(fam.k() * x.n());
    for (u, w) in fam.factors() {
        for mu in herm_eig(&x.combination(&w))?.eigenvalues {
            points.push(u.iter().map(|ui| ui * mu).collect());
        }
    }
    Ok(JointSpectrum::new(points))
}

/// Whether every point of `js` (after merging within `tol`) lies in `p`.
pub fn spectrum_in_polytope(js: &JointSpectrum, p: &Polytope, tol: f64) -> Result<bool> {
    for (pt, _) in js.grouped(tol) {
        if !p.contains_point(&pt, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal commuting dilation with `‖Tⱼ‖ ≤ 2d` from `λ⁽ᵐ⁾ = 2d·eₘeₘᵀ` on the `2d` real coordinates.
pub fn coordinate_projection_dilation(x: &GenTuple) -> Result<Dilation> {
    x.check_contractions(CONTRACTION_TOL)?;
    let parts = x.hermitian_parts();
    let (s, v) = lambda_parts(&parts, &LambdaFamily::coordinate(parts.d()))?;
    let t = GenTuple::from_hermitian_parts(&s)?;
    Dilation::new(DilatedTuple::Normal(t), v, 1.0, x)
}

/// Dilation of `X ∈ 𝔠` with `Σ εⱼTⱼ ≤ dI` for all signs, from `λ⁽ᵐ⁾ = d·eₘeₘᵀ`.
pub fn cube_to_diamond_dilation(x: &HermTuple) -> Result<Dilation> {
    x.check_contractions(CONTRACTION_TOL)?;
    lambda_dilation(x, &LambdaFamily::coordinate(x.d()))
}

/// Tight frame bound `σ` with `Σ vvᵀ = σI`.
pub fn tight_frame_bound(vectors: &[Vec<f64>], tol: f64) -> Result<f64> {
    let d = vectors.first().map(|v| v.len()).ok_or_else(|| Error::InvalidInput("empty frame".into()))?;
    if d == 0 || vectors.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch("frame vectors must share one positive dimension".into()));
    }
    let mut s = vec![vec![0.0; d]; d];
    for v in vectors {
        for i in 0..d {
            for j in 0..d {
                s[i][j] += v[i] * v[j];
            }
        }
    }
    let sigma = (0..d).map(|i| s[i][i]).sum::<f64>() / d as f64;
    let mut deviation: f64 = 0.0;
    for (i, row) in s.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            deviation = deviation.max((x - if i == j { sigma } else { 0.0 }).abs());
        }
    }
    if sigma <= 0.0 || deviation > tol * sigma.max(1.0) {
        return Err(Error::NotTight { deviation });
    }
    Ok(sigma)
}

fn check_weights(vectors: &[Vec<f64>], weights: &[f64]) -> Result<()> {
    if weights.len() != vectors.len() {
        return Err(Error::DimensionMismatch(format!("{} weights for {} frame vectors", weights.len(), vectors.len())));
    }
    if weights.iter().any(|c| !c.is_finite() || *c <= 0.0) {
        return Err(Error::InvalidInput("frame weights must be positive".into()));
    }
    Ok(())
}

/// `κ = σ·min cᵢ³ / Σ cᵢ` for a tight frame with bound `σ` and weights `c`.
pub fn frame_kappa(vectors: &[Vec<f64>], weights: &[f64]) -> Result<f64> {
    check_weights(vectors, weights)?;
    let sigma = tight_frame_bound(vectors, IDENTITY_TOL)?;
    let min_c = weights.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(sigma * min_c.powi(3) / weights.iter().sum::<f64>())
}

/// The polytope `K = conv{±cₘvₘ}` with facets `(±cₘvₘ, 1)` of its polar.
fn frame_polytopes(vectors: &[Vec<f64>], weights: &[f64]) -> (Polytope, Vec<Facet>) {
    let mut pts = Vec::with_capacity(2 * vectors.len());
    for (v, c) in vectors.iter().zip(weights) {
        for s in [1.0, -1.0] {
            pts.push(v.iter().map(|x| s * c * x).collect::<Vec<f64>>());
        }
    }
    let facets = pts.iter().map(|p| Facet::new(p.clone(), 1.0)).collect();
    (Polytope { dim: vectors[0].len(), vertices: Some(pts), facets: None }, facets)
}

/// Dilation `κT` of `κX` with joint spectrum in `K = conv{±cₘvₘ}`, for `X ∈ Wmax(K′)`.
///
/// Uses `λ⁽ᵐ⁾ = bₘvₘvₘᵀ` with `bₘ = σ⁻¹ Σcᵢ / cₘ` and `βₘ = cₘ / Σcᵢ`. The stored tuple is
/// already multiplied by `κ` and `scale = κ`.
pub fn frame_dilation(x: &HermTuple, vectors: &[Vec<f64>], weights: &[f64]) -> Result<Dilation> {
    let kappa = frame_kappa(vectors, weights)?;
    let sigma = tight_frame_bound(vectors, IDENTITY_TOL)?;
    if vectors[0].len() != x.d() {
        return Err(Error::DimensionMismatch(format!("frame dimension {} differs from d = {}", vectors[0].len(), x.d())));
    }
    let (k_poly, facets) = frame_polytopes(vectors, weights);
    let dual = Polytope { dim: x.d(), vertices: None, facets: Some(facets) };
    let (margin, idx) = wmax_margin(x, &dual)?;
    if margin < -CONTRACTION_TOL {
        let f = &dual.facets()?[idx];
        return Err(Error::Precondition(format!("facet {:?} of the polar body gives min eigenvalue {margin:e}", f.alpha)));
    }
    let total: f64 = weights.iter().sum();
    let lambdas = vectors
        .iter()
        .zip(weights)
        .map(|(v, c)| {
            let b = total / (sigma * c);
            v.iter().map(|vi| v.iter().map(|vj| b * vi * vj).collect()).collect()
        })
        .collect();
    let fam = LambdaFamily::new(lambdas, weights.iter().map(|c| c / total).collect())?;
    let (t, v) = lambda_parts(x, &fam)?;
    let js = joint_spectrum_rank_one(&fam, x)?;
    let scaled = JointSpectrum::new(js.points.iter().map(|p| p.iter().map(|z| kappa * z).collect()).collect());
    if !spectrum_in_polytope(&scaled, &k_poly, 1e-8)? {
        return Err(Error::Precondition("joint spectrum of κT leaves K".into()));
    }
    Dilation::self_adjoint(t.scale(kappa), v, kappa, x)
}

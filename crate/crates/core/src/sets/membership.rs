use crate::error::{Error, Result};
use crate::linalg::{herm_opnorm, kron_sum, min_eig, HermMatrix};
use crate::random::{random_unit_vector, rng_from_seed};
use crate::sdp::{affine_projector_povm, BlockPsdProblem, DykstraParams, FeasibilityResult};
use crate::tuple::HermTuple;

use super::polytope::{sign_vectors, Facet, Polytope};

/// Largest d for which the 2ᵈ sign-combination checks run.
pub const MAX_SIGN_DIM: usize = 24;

/// Default number of sampled sphere facets for ball-related `Wmax` tests.
pub const DEFAULT_BALL_FACETS: usize = 2000;

fn check_d(x: &HermTuple, d: usize) -> Result<()> {
    if x.d() != d {
        return Err(Error::DimensionMismatch(format!("tuple has d = {}, set lives in dimension {d}", x.d())));
    }
    Ok(())
}

/// `min_eig(a·I − Σ αᵢXᵢ)`.
pub fn facet_margin(x: &HermTuple, f: &Facet) -> Result<f64> {
    let m = HermMatrix::identity(x.n()).scale(f.a).sub(&x.combination(&f.alpha));
    min_eig(&m)
}

/// Smallest facet margin over the polytope's H-representation, and the facet attaining it.
pub fn wmax_margin(x: &HermTuple, p: &Polytope) -> Result<(f64, usize)> {
    check_d(x, p.dim)?;
    let mut worst = (f64::INFINITY, 0);
    for (i, f) in p.facets()?.iter().enumerate() {
        let m = facet_margin(x, f)?;
        if m < worst.0 {
            worst = (m, i);
        }
    }
    Ok(worst)
}

/// `X ∈ Wmax(P)`: every facet inequality `Σ αᵢXᵢ ≤ aI` holds up to `tol`.
pub fn wmax_member(x: &HermTuple, p: &Polytope, tol: f64) -> Result<bool> {
    Ok(wmax_margin(x, p)?.0 >= -tol)
}

/// `X ∈ Wmin(P)` decided as a POVM feasibility problem `Σ K_v = I, Σ v K_v = X, K_v ⪰ 0`.
pub fn wmin_member(x: &HermTuple, p: &Polytope, params: DykstraParams) -> Result<FeasibilityResult> {
    check_d(x, p.dim)?;
    let proj = affine_projector_povm(p.vertices()?, x)?;
    BlockPsdProblem::new(&proj, params).solve()
}

/// `min_eig(I − Σ Xⱼ²)`.
pub fn ball_margin(x: &HermTuple) -> Result<f64> {
    let mut m = HermMatrix::identity(x.n());
    for xj in x.iter() {
        m = m.sub(&xj.square());
    }
    min_eig(&m)
}

/// Membership in the matrix ball `𝔅 = {Σ Xⱼ² ≤ I}`.
pub fn ball_member(x: &HermTuple, tol: f64) -> Result<bool> {
    Ok(ball_margin(x)? >= -tol)
}

/// `‖Σ Xⱼ ⊗ X̄ⱼ‖`.
pub fn selfdual_norm(x: &HermTuple) -> Result<f64> {
    let mats = x.cmatrices();
    let conj: Vec<_> = mats.iter().map(|m| m.conj()).collect();
    herm_opnorm(&HermMatrix::symmetrize(&kron_sum(&mats, &conj)))
}

/// Membership in the self-dual ball `𝔇 = {‖Σ Xⱼ ⊗ X̄ⱼ‖ ≤ 1}`.
pub fn selfdual_member(x: &HermTuple, tol: f64) -> Result<bool> {
    Ok(selfdual_norm(x)? <= 1.0 + tol)
}

/// Membership in the matrix cube: every `‖Xᵢ‖ ≤ 1`.
pub fn cube_member(x: &HermTuple, tol: f64) -> Result<bool> {
    Ok(x.max_norm()? <= 1.0 + tol)
}

fn guard_sign_dim(d: usize) -> Result<()> {
    if d > MAX_SIGN_DIM {
        return Err(Error::TooLarge { what: "d (2^d sign vectors)", value: d, max: MAX_SIGN_DIM });
    }
    Ok(())
}

/// The sign vector with the smallest `min_eig(I − Σ εⱼXⱼ)`, and that value.
pub fn diamond_worst_sign(x: &HermTuple) -> Result<(Vec<f64>, f64)> {
    guard_sign_dim(x.d())?;
    let id = HermMatrix::identity(x.n());
    let mut worst = (Vec::new(), f64::INFINITY);
    for eps in sign_vectors(x.d()) {
        let m = min_eig(&id.sub(&x.combination(&eps)))?;
        if m < worst.1 {
            worst = (eps, m);
        }
    }
    Ok(worst)
}

/// Membership in `Wmax(D_d)`: `Σ εⱼXⱼ ≤ I` for every sign vector ε.
pub fn diamond_wmax_member(x: &HermTuple, tol: f64) -> Result<bool> {
    Ok(diamond_worst_sign(x)?.1 >= -tol)
}

/// Approximate `Wmax(closed unit ball)` membership from `samples` random sphere facets plus ±eᵢ.
///
/// The sampled facet set only gives a superset of `Wmax(ball)`, so a `true` answer is approximate.
pub fn wmax_ball_sampled(x: &HermTuple, samples: usize, seed: u64, tol: f64) -> Result<bool> {
    let d = x.d();
    let id = HermMatrix::identity(x.n());
    let mut rng = rng_from_seed(seed);
    let mut dirs: Vec<Vec<f64>> = (0..d)
        .flat_map(|i| {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            let neg = e.iter().map(|v| -v).collect();
            [e, neg]
        })
        .collect();
    dirs.extend((0..samples).map(|_| random_unit_vector(&mut rng, d)));
    for u in dirs {
        if min_eig(&id.sub(&x.combination(&u)))? < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Equal-norm tight frames `Φ = {v₁, …, v_N}` with `Σ vᵢvᵢᵀ = σI`: validation, symmetry
//! groups, vertex reflexivity, projection invariance and the `Wmax(K) ⊆ d·Wmin(K)` pipeline for
//! `K = conv(Φ)`.

mod pipeline;
mod symmetry;

use serde::{Deserialize, Serialize};

use crate::dilation::tight_frame_bound;
use crate::error::{Error, Result};
use crate::sets::{sign_vectors, simplex3_vertices};

pub use pipeline::{projection_invariance, vertex_reflexive_pipeline, PipelineReport};
pub use symmetry::{is_vertex_reflexive, symmetry_group, SymmetryGroup, VertexReflexivity, DEFAULT_SYMMETRY_CAP};

/// Tolerance on tightness and the common norm.
pub const FRAME_TOL: f64 = 1e-9;

/// Names accepted by [`frame_by_name`].
pub const BUILDER_NAMES: [&str; 6] = ["simplex3", "pentagon", "pm_basis", "cube_corners", "s5_orbit", "theta"];

/// A validated equal-norm tight frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    /// Common norm `ℓ`.
    pub norm: f64,
    /// Frame constant `σ = ℓ²N/d`.
    pub sigma: f64,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Largest `‖(1/N) Σ vᵢ‖∞`.
    pub fn barycenter_norm(&self) -> f64 {
        (0..self.dim)
            .map(|k| (self.vectors.iter().map(|v| v[k]).sum::<f64>() / self.len() as f64).abs())
            .fold(0.0, f64::max)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Validates distinct, nonzero, equal-norm vectors with `Σ vᵢvᵢᵀ = σI`.
pub fn check_tight(vectors: Vec<Vec<f64>>) -> Result<Frame> {
    let dim = vectors.first().map(|v| v.len()).ok_or_else(|| Error::InvalidInput("empty frame".into()))?;
    if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch("frame vectors must share one positive dimension".into()));
    }
    if vectors.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norms: Vec<f64> = vectors.iter().map(|v| norm(v)).collect();
    let (lo, hi) = norms.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &n| (lo.min(n), hi.max(n)));
    if lo == 0.0 {
        return Err(Error::InvalidInput("frame vectors must be nonzero".into()));
    }
    if hi - lo > FRAME_TOL * hi {
        return Err(Error::NotEqualNorm { spread: hi - lo });
    }
    for (i, a) in vectors.iter().enumerate() {
        if vectors[..i].iter().any(|b| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= FRAME_TOL * hi)) {
            return Err(Error::InvalidInput(format!("frame vector {i} is repeated")));
        }
    }
    let sigma = tight_frame_bound(&vectors, FRAME_TOL)?;
    Ok(Frame { dim, norm: hi, sigma, vectors })
}

/// `{v₁, …, v₄} = {(1,1,1), (1,−1,−1), (−1,1,−1), (−1,−1,1)}`.
pub fn simplex3() -> Frame {
    check_tight(simplex3_vertices()).expect("simplex frame is tight")
}

/// `{(cos 2πk/5, sin 2πk/5)}ₖ₌₁⁵`.
pub fn pentagon() -> Frame {
    let vs = (1..=5)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    check_tight(vs).expect("pentagon frame is tight")
}

/// `{±e₁, …, ±e_d}`.
pub fn pm_basis(d: usize) -> Result<Frame> {
    let mut vs = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[i] = s;
            vs.push(e);
        }
    }
    check_tight(vs)
}

/// The `2ᵈ` corners of `[−1, 1]ᵈ` scaled to unit norm.
pub fn cube_corners(d: usize) -> Result<Frame> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let s = 1.0 / (d as f64).sqrt();
    check_tight(sign_vectors(d).into_iter().map(|v| v.into_iter().map(|x| x * s).collect()).collect())
}

/// Orthonormal basis of `(1, …, 1)^⊥ ⊂ ℝⁿ`, rows `(1, …, 1, −k, 0, …)/√(k(k+1))`.
fn sum_zero_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let c = 1.0 / ((k * (k + 1)) as f64).sqrt();
            (0..n).map(|i| if i < k { c } else if i == k { -(k as f64) * c } else { 0.0 }).collect()
        })
        .collect()
}

/// The `S₅`-orbit of `(3, 3, −2, −2, −2)`, normalized and written in `(1, …, 1)^⊥ ≅ ℝ⁴`.
pub fn s5_orbit() -> Frame {
    let basis = sum_zero_basis(5);
    let mut vs = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            let phi: Vec<f64> = (0..5).map(|k| if k == i || k == j { 3.0 } else { -2.0 }).collect();
            let coords: Vec<f64> = basis.iter().map(|b| b.iter().zip(&phi).map(|(x, y)| x * y).sum()).collect();
            let n = norm(&coords);
            vs.push(coords.into_iter().map(|x| x / n).collect());
        }
    }
    check_tight(vs).expect("S5 orbit frame is tight")
}

/// `Θ = (Φ ⊕ 0₂) ∪ (0₄ ⊕ Ψ)` for `Φ` the `S₅`-orbit frame and `Ψ` the pentagon.
pub fn theta() -> Frame {
    let mut vs: Vec<Vec<f64>> = s5_orbit().vectors.into_iter().map(|mut v| {
        v.extend([0.0, 0.0]);
        v
    }).collect();
    vs.extend(pentagon().vectors.into_iter().map(|w| {
        let mut v = vec![0.0; 4];
        v.extend(w);
        v
    }));
    check_tight(vs).expect("combined frame is tight")
}

/// Builder lookup; `d` is used by `pm_basis` and `cube_corners`.
pub fn frame_by_name(name: &str, d: usize) -> Result<Frame> {
    match name {
        "simplex3" => Ok(simplex3()),
        "pentagon" => Ok(pentagon()),
        "pm_basis" => pm_basis(d),
        "cube_corners" => cube_corners(d),
        "s5_orbit" => Ok(s5_orbit()),
        "theta" => Ok(theta()),
        other => Err(Error::InvalidInput(format!("unknown frame builder {other:?}; expected one of {BUILDER_NAMES:?}"))),
    }
}

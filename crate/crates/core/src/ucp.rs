//! Existence of UCP, CCP and CC maps between matrix tuples, decided as Choi-matrix
//! feasibility problems, together with spectrahedron inclusion and the cube relaxation.
//!
//! For matrix tuples `A` on `ℂᵏ` and `B` on `ℂᵐ`, a UCP map `S_A → S_B` sending `A` to `B` extends
//! to `M_k` (Arveson), so it exists iff some `C ⪰ 0` in `M_k ⊗ M_m` satisfies `φ_C(I) = I` and
//! `φ_C(Aᵢ) = Bᵢ`. Conversely every such `C` restricts to the required map. The Choi map is
//! Hermitian-preserving, so non-Hermitian constraints split into their real and imaginary parts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{min_eig, opnorm, CMatrix, HermMatrix};
use crate::sdp::{affine_projector_choi, apply_choi, in_convex_hull, BlockPsdProblem, DykstraParams, FeasibilityResult, Status};
use crate::sets::{cube, sign_vectors, wmin_member, zero_interior_range, InteriorEstimate, DEFAULT_DIRECTIONS, DEFAULT_REFINE_STEPS};
use crate::tuple::{GenTuple, HermTuple};

/// Largest d for the sign-vector tests of the cube relaxation.
pub const MAX_RELAX_D: usize = 16;

/// Which class of maps is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// Unital completely positive.
    Ucp,
    /// Completely contractive and completely positive.
    Ccp,
    /// Completely contractive.
    Cc,
}

/// A map-existence problem reduced to a UCP problem between constructed Hermitian tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiProblem {
    pub kind: MapKind,
    /// Source constraints, on `ℂᵏ`.
    pub source: HermTuple,
    /// Target constraints, on `ℂᵐ`.
    pub target: HermTuple,
}

fn off_diagonal(a: &CMatrix) -> HermMatrix {
    let n = a.rows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    m.set_block(0, n, a);
    m.set_block(n, 0, &a.adjoint());
    HermMatrix::symmetrize(&m)
}

fn with_zero_corner(a: &CMatrix) -> CMatrix {
    CMatrix::direct_sum(&[a.clone(), CMatrix::zeros(1, 1)])
}

impl ChoiProblem {
    /// Builds the constrained tuples.
    ///
    /// CCP uses `Ãᵢ = Aᵢ ⊕ 0` on `ℂᵏ⁺¹`; CC uses `Â(a) = [[0, a], [a*, 0]]` on `ℂ²ᵏ` for both `a = Aᵢ`
    /// and `a = iAᵢ`, so that the corner `[[0, a], [0, 0]]` is determined.
    pub fn new(a: &GenTuple, b: &GenTuple, kind: MapKind) -> Result<Self> {
        if a.d() != b.d() {
            return Err(Error::DimensionMismatch(format!("source has d = {}, target has d = {}", a.d(), b.d())));
        }
        let i = num_complex::Complex64::new(0.0, 1.0);
        let (source, target) = match kind {
            MapKind::Ucp => (a.hermitian_parts(), b.hermitian_parts()),
            MapKind::Ccp => {
                let ext = |t: &GenTuple| GenTuple::new(t.matrices().iter().map(with_zero_corner).collect());
                (ext(a)?.hermitian_parts(), ext(b)?.hermitian_parts())
            }
            MapKind::Cc => {
                let hat = |t: &GenTuple| {
                    let mut out = Vec::with_capacity(2 * t.d());
                    for x in t.matrices() {
                        out.push(off_diagonal(x));
                        out.push(off_diagonal(&x.scale_c(i)));
                    }
                    HermTuple::new(out)
                };
                (hat(a)?, hat(b)?)
            }
        };
        Ok(ChoiProblem { kind, source, target })
    }

    /// Searches for a PSD Choi matrix by alternating projections.
    pub fn solve(&self, params: DykstraParams) -> Result<FeasibilityResult> {
        let proj = affine_projector_choi(&self.source, &self.target)?;
        BlockPsdProblem::new(&proj, params).solve()
    }

    /// Independent re-check of a Choi matrix: `(min eigenvalue, max constraint error)`.
    pub fn verify(&self, choi: &HermMatrix) -> Result<(f64, f64)> {
        let (k, m) = (self.source.n(), self.target.n());
        if choi.dim() != k * m {
            return Err(Error::DimensionMismatch(format!("Choi matrix has size {}, expected {}", choi.dim(), k * m)));
        }
        let mut err = opnorm(&(&apply_choi(choi, k, m, &CMatrix::identity(k)) - &CMatrix::identity(m)))?;
        for (a, b) in self.source.iter().zip(self.target.iter()) {
            err = err.max(opnorm(&(&apply_choi(choi, k, m, a) - b.as_cmatrix()))?);
        }
        Ok((min_eig(choi)?, err))
    }
}

/// UCP map `φ: M_k → M_m` with `φ(Aᵢ) = Bᵢ`; equivalently `W(B) ⊆ W(A)`.
pub fn ucp_exists(a: &GenTuple, b: &GenTuple) -> Result<FeasibilityResult> {
    ChoiProblem::new(a, b, MapKind::Ucp)?.solve(DykstraParams::default())
}

/// CCP map with `φ(Aᵢ) = Bᵢ`, through the UCP problem on `Aᵢ ⊕ 0 ↦ Bᵢ ⊕ 0`.
pub fn ccp_exists(a: &GenTuple, b: &GenTuple) -> Result<FeasibilityResult> {
    ChoiProblem::new(a, b, MapKind::Ccp)?.solve(DykstraParams::default())
}

/// CC map with `φ(Aᵢ) = Bᵢ`, through the UCP problem on the off-diagonal embeddings.
pub fn cc_exists(a: &GenTuple, b: &GenTuple) -> Result<FeasibilityResult> {
    ChoiProblem::new(a, b, MapKind::Cc)?.solve(DykstraParams::default())
}

/// Map existence between normal tuples given by their joint spectra.
///
/// UCP: `σ(B) ⊆ conv σ(A)`; CCP: `σ(B) ⊆ conv(σ(A) ∪ {0})`; CC: `σ(B) ⊆ conv(σ(A) ∪ −σ(A))`.
/// Complex atoms are given as real points `(Re z₁, Im z₁, …)`; CC mode treats atoms as real.
pub fn normal_ucp_exists(atoms_a: &[Vec<f64>], atoms_b: &[Vec<f64>], kind: MapKind, tol: f64) -> Result<bool> {
    let d = atoms_a.first().map(|p| p.len()).ok_or_else(|| Error::InvalidInput("empty source spectrum".into()))?;
    if atoms_a.iter().chain(atoms_b).any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch("atoms must share one dimension".into()));
    }
    let mut hull = atoms_a.to_vec();
    match kind {
        MapKind::Ucp => {}
        MapKind::Ccp => hull.push(vec![0.0; d]),
        MapKind::Cc => hull.extend(atoms_a.iter().map(|p| p.iter().map(|x| -x).collect::<Vec<_>>())),
    }
    for p in atoms_b {
        if !in_convex_hull(&hull, p, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`spectrahedron_inclusion`].
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionOutcome {
    /// Feasible exactly when `D_A ⊆ D_B` was certified by a UCP map.
    pub result: FeasibilityResult,
    pub interior: InteriorEstimate,
    pub note: Option<String>,
}

/// `D_A ⊆ D_B`, decided as UCP existence `A ↦ B` when `0 ∈ int W₁(A)` (so that `D_A` is bounded).
///
/// When the interior test fails the result is `Undecided`.
pub fn spectrahedron_inclusion(a: &HermTuple, b: &HermTuple) -> Result<InclusionOutcome> {
    let interior = zero_interior_range(a, DEFAULT_DIRECTIONS, DEFAULT_REFINE_STEPS, 0)?;
    if !interior.interior {
        let result = FeasibilityResult { status: Status::Undecided, witness: None, residual: f64::NAN, iterations: 0 };
        let note = format!("0 is not an interior point of W_1(A) (margin {:e}); D_A is unbounded and map existence is not equivalent to inclusion", interior.margin);
        return Ok(InclusionOutcome { result, interior, note: Some(note) });
    }
    let result = ucp_exists(&a.to_general(), &b.to_general())?;
    Ok(InclusionOutcome { result, interior, note: None })
}

/// Verdict of the cube relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CubeRelaxation {
    /// `[−1, 1]ᵈ ⊄ D_B(1)`.
    CubeExcluded,
    Inconclusive,
}

/// Exact vertex test for `[−1, 1]ᵈ ⊆ D_B(1)`: `min_eig(I − Σ εⱼBⱼ) ≥ −tol` for all signs.
pub fn cube_in_level1(b: &HermTuple, tol: f64) -> Result<bool> {
    if b.d() > MAX_RELAX_D {
        return Err(Error::TooLarge { what: "d", value: b.d(), max: MAX_RELAX_D });
    }
    let id = HermMatrix::identity(b.n());
    for eps in sign_vectors(b.d()) {
        if min_eig(&id.sub(&b.combination(&eps)))? < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B ∉ Wmin(cube)` rules out `[−1, 1]ᵈ ⊆ D_B(1)`; any other outcome is inconclusive.
pub fn relax_cube(b: &HermTuple, params: DykstraParams) -> Result<(CubeRelaxation, FeasibilityResult)> {
    if b.d() > MAX_RELAX_D {
        return Err(Error::TooLarge { what: "d", value: b.d(), max: MAX_RELAX_D });
    }
    let res = wmin_member(b, &cube(b.d()), params)?;
    let verdict = if res.status == Status::Infeasible { CubeRelaxation::CubeExcluded } else { CubeRelaxation::Inconclusive };
    Ok((verdict, res))
}

use super::Frame;
use crate::dilation::{joint_spectrum_rank_one, lambda_dilation, spectrum_in_polytope, Dilation, LambdaFamily};
use crate::error::{Error, Result};
use crate::linalg::JointSpectrum;
use crate::sdp::in_convex_hull;
use crate::sets::{wmax_margin, Facet, Polytope};
use crate::tuple::HermTuple;

const HULL_TOL: f64 = 1e-9;

/// Whether `ℓ⁻²vᵢvᵢᵀ` maps `K = conv(Φ)` into itself, checked on the vertex images
/// `ℓ⁻²⟨vⱼ, vᵢ⟩vᵢ` by a hull LP.
pub fn projection_invariance(f: &Frame, tol: f64) -> Result<bool> {
    let l2 = f.norm * f.norm;
    for vi in &f.vectors {
        let mut seen: Vec<f64> = Vec::new();
        for vj in &f.vectors {
            let c = vi.iter().zip(vj).map(|(a, b)| a * b).sum::<f64>() / l2;
            if seen.iter().any(|s| (s - c).abs() <= tol) {
                continue;
            }
            seen.push(c);
            let img: Vec<f64> = vi.iter().map(|x| c * x).collect();
            if !in_convex_hull(&f.vectors, &img, tol)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`vertex_reflexive_pipeline`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    /// Dilation of `X` from `λ⁽ᵐ⁾ = (d/ℓ²)vₘvₘᵀ`.
    pub dilation: Dilation,
    /// Smallest facet margin of `X` against the supplied facets of `K`, if any.
    pub wmax_margin: Option<f64>,
    /// Whether every joint eigenvalue of `T/d` lies in `K`.
    pub spectrum_in_k: bool,
}

/// Dilates `X ∈ Wmax(conv Φ)` to a commuting `T` with `σ(T/d) ⊆ conv Φ`.
///
/// Requires projection invariance of `K`, which holds for vertex-reflexive frames. When
/// `facets` is given, `X ∈ Wmax(K)` is checked first; otherwise it is assumed.
pub fn vertex_reflexive_pipeline(f: &Frame, x: &HermTuple, facets: Option<&[Facet]>) -> Result<PipelineReport> {
    if x.d() != f.dim {
        return Err(Error::DimensionMismatch(format!("frame dimension {} differs from d = {}", f.dim, x.d())));
    }
    if !projection_invariance(f, HULL_TOL)? {
        return Err(Error::Precondition("conv(frame) is not invariant under the rank-one projections".into()));
    }
    let wmax = match facets {
        Some(fs) => {
            let (m, idx) = wmax_margin(x, &Polytope { dim: f.dim, vertices: None, facets: Some(fs.to_vec()) })?;
            if m < -HULL_TOL {
                return Err(Error::Precondition(format!("X violates facet {idx} of K (min eigenvalue {m:e})")));
            }
            Some(m)
        }
        None => None,
    };
    let d = f.dim as f64;
    let c = d / (f.norm * f.norm);
    let lambdas = f.vectors.iter().map(|v| v.iter().map(|a| v.iter().map(|b| c * a * b).collect()).collect()).collect();
    let fam = LambdaFamily::new(lambdas, vec![1.0 / f.len() as f64; f.len()])?;
    let dilation = lambda_dilation(x, &fam)?;
    let js = joint_spectrum_rank_one(&fam, x)?;
    let scaled = JointSpectrum::new(js.points.into_iter().map(|p| p.into_iter().map(|z| z / d).collect()).collect());
    let k = Polytope { dim: f.dim, vertices: Some(f.vectors.clone()), facets: None };
    let spectrum_in_k = spectrum_in_polytope(&scaled, &k, 1e-8)?;
    Ok(PipelineReport { dilation, wmax_margin: wmax, spectrum_in_k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{check_tight, cube_corners, pentagon, pm_basis, s5_orbit, simplex3, theta};
    use crate::sets::simplex3 as simplex3_polytope;

    #[test]
    fn builders_are_projection_invariant() {
        for f in [simplex3(), pentagon(), pm_basis(3).unwrap(), cube_corners(2).unwrap(), s5_orbit(), theta()] {
            assert!(projection_invariance(&f, 1e-9).unwrap(), "{f:?}");
            assert!(f.barycenter_norm() < 1e-9);
        }
    }

    #[test]
    fn broken_frame_is_not_invariant() {
        // Unit vectors at 0°, 100°, 200°: the projection of v₂ onto v₁ leaves conv Φ.
        let vs: Vec<Vec<f64>> = [0.0f64, 100.0, 200.0].iter().map(|t| vec![t.to_radians().cos(), t.to_radians().sin()]).collect();
        let f = Frame { dim: 2, norm: 1.0, sigma: 1.5, vectors: vs.clone() };
        assert!(check_tight(vs).is_err());
        assert!(!projection_invariance(&f, 1e-9).unwrap());
    }

    #[test]
    fn simplex_vertex_scalar() {
        let f = simplex3();
        let x = HermTuple::scalar(&f.vectors[0]).unwrap();
        let p = simplex3_polytope();
        let r = vertex_reflexive_pipeline(&f, &x, p.facets.as_deref()).unwrap();
        assert!(r.spectrum_in_k);
        assert!(r.wmax_margin.unwrap().abs() < 1e-12);
        assert!(r.dilation.residuals.compression < 1e-14);
    }

    #[test]
    fn square_corner_frame_with_clifford_pair() {
        let f = cube_corners(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // K is the square with corners (±1, ±1)/√2, with facets ±xᵢ ≤ 1/√2.
        let facets: Vec<Facet> = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]].iter().map(|a| Facet::new(a.to_vec(), s)).collect();
        let x = HermTuple::from_real(&[vec![vec![0.0, s], vec![s, 0.0]], vec![vec![s, 0.0], vec![0.0, -s]]]).unwrap();
        let r = vertex_reflexive_pipeline(&f, &x, Some(&facets)).unwrap();
        assert!(r.spectrum_in_k);
        let res = r.dilation.residuals;
        assert!(res.compression < 1e-14 && res.commutator < 1e-14);
        let too_big = x.scale(1.5);
        assert!(matches!(vertex_reflexive_pipeline(&f, &too_big, Some(&facets)), Err(Error::Precondition(_))));
    }
}

use crate::error::{Error, Result};
use crate::sdp::in_convex_hull;

use super::polytope::{Facet, Polytope};

/// Radius of the cross-polytope probed around 0 by the interior test.
pub const INTERIOR_MARGIN: f64 = 1e-7;

/// Whether 0 is an interior point: every facet has `a > 0`, or else all `±δeᵢ` lie in the vertex hull.
pub fn origin_is_interior(p: &Polytope) -> Result<bool> {
    if let Some(fs) = &p.facets {
        return Ok(fs.iter().all(|f| f.a > INTERIOR_MARGIN * (1.0 + norm(&f.alpha))));
    }
    let vs = p.vertices()?;
    let scale = vs.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    let delta = INTERIOR_MARGIN * scale;
    for i in 0..p.dim {
        for s in [delta, -delta] {
            let mut e = vec![0.0; p.dim];
            e[i] = s;
            if !in_convex_hull(vs, &e, 1e-12)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Polar dual `P' = {y : x·y ≤ 1 for all x ∈ P}` by swapping representations.
///
/// Each vertex `v` becomes the facet `(v, 1)`; each facet `(α, a)` becomes the vertex `α/a`.
pub fn polar_dual_polytope(p: &Polytope) -> Result<Polytope> {
    p.validate()?;
    if !origin_is_interior(p)? {
        return Err(Error::OriginNotInterior);
    }
    let facets = p.vertices.as_ref().map(|vs| vs.iter().map(|v| Facet::new(v.clone(), 1.0)).collect());
    let vertices = p.facets.as_ref().map(|fs| fs.iter().map(|f| f.alpha.iter().map(|x| x / f.a).collect()).collect());
    Ok(Polytope { dim: p.dim, vertices, facets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::polytope::{cube, diamond, right_simplex};

    fn same_point_sets(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
        a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p.iter().zip(q).all(|(x, y)| (x - y).abs() < 1e-12)))
    }

    fn same_facets(a: &[Facet], b: &[Facet]) -> bool {
        let norm = |f: &Facet| f.alpha.iter().map(|x| x / f.a).collect::<Vec<_>>();
        same_point_sets(&a.iter().map(norm).collect::<Vec<_>>(), &b.iter().map(norm).collect::<Vec<_>>())
    }

    #[test]
    fn cube_and_diamond_are_dual() {
        for d in 1..=4 {
            let dc = polar_dual_polytope(&cube(d)).unwrap();
            dc.validate().unwrap();
            assert!(same_point_sets(dc.vertices().unwrap(), diamond(d).vertices().unwrap()));
            assert!(same_facets(dc.facets().unwrap(), diamond(d).facets().unwrap()));
            let dd = polar_dual_polytope(&diamond(d)).unwrap();
            assert!(same_point_sets(dd.vertices().unwrap(), cube(d).vertices().unwrap()));
        }
    }

    #[test]
    fn shifted_simplex_bipolar_round_trip() {
        let p = right_simplex(3).translate(&[-0.25, -0.25, -0.25]);
        let back = polar_dual_polytope(&polar_dual_polytope(&p).unwrap()).unwrap();
        back.validate().unwrap();
        assert!(same_point_sets(back.vertices().unwrap(), p.vertices().unwrap()));
        assert!(same_facets(back.facets().unwrap(), p.facets().unwrap()));
    }

    #[test]
    fn origin_on_boundary_is_rejected() {
        assert_eq!(polar_dual_polytope(&right_simplex(2)), Err(Error::OriginNotInterior));
        let v_only = Polytope::from_vertices(right_simplex(2).vertices.unwrap()).unwrap();
        assert_eq!(polar_dual_polytope(&v_only), Err(Error::OriginNotInterior));
        let shifted = Polytope::from_vertices(right_simplex(2).translate(&[-0.3, -0.3]).vertices.unwrap()).unwrap();
        assert!(origin_is_interior(&shifted).unwrap());
    }
}

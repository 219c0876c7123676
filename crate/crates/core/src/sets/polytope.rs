use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sdp::in_convex_hull;

/// Tolerance for the vertex/facet consistency invariant.
pub const POLYTOPE_TOL: f64 = 1e-9;

/// Half-space `{x : Σ αᵢxᵢ ≤ a}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub alpha: Vec<f64>,
    pub a: f64,
}

impl Facet {
    pub fn new(alpha: Vec<f64>, a: f64) -> Self {
        Facet { alpha, a }
    }

    /// `a − α·x`; nonnegative inside the half-space.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.a - self.alpha.iter().zip(x).map(|(p, q)| p * q).sum::<f64>()
    }
}

/// Convex polytope in ℝᵈ with a vertex list, a facet list, or both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polytope {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Facet>>,
}

impl Polytope {
    /// Validates dimensions and, when both representations are given, their consistency.
    pub fn new(dim: usize, vertices: Option<Vec<Vec<f64>>>, facets: Option<Vec<Facet>>) -> Result<Self> {
        let p = Polytope { dim, vertices, facets };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("polytope dimension must be positive".into()));
        }
        if self.vertices.is_none() && self.facets.is_none() {
            return Err(Error::InvalidInput("polytope needs vertices or facets".into()));
        }
        if let Some(vs) = &self.vertices {
            if vs.is_empty() {
                return Err(Error::InvalidInput("empty vertex list".into()));
            }
            if let Some(i) = vs.iter().position(|v| v.len() != self.dim) {
                return Err(Error::DimensionMismatch(format!("vertex {i} has {} coordinates, expected {}", vs[i].len(), self.dim)));
            }
        }
        if let Some(fs) = &self.facets {
            if let Some(i) = fs.iter().position(|f| f.alpha.len() != self.dim) {
                return Err(Error::DimensionMismatch(format!("facet {i} has {} coefficients, expected {}", fs[i].alpha.len(), self.dim)));
            }
        }
        if let (Some(vs), Some(fs)) = (&self.vertices, &self.facets) {
            for (i, f) in fs.iter().enumerate() {
                let scale = POLYTOPE_TOL * (1.0 + f.a.abs());
                if let Some(j) = vs.iter().position(|v| f.slack(v) < -scale) {
                    return Err(Error::InvalidInput(format!("vertex {j} violates facet {i}")));
                }
                if !vs.iter().any(|v| f.slack(v).abs() <= scale) {
                    return Err(Error::InvalidInput(format!("facet {i} is not tight at any vertex")));
                }
            }
        }
        Ok(())
    }

    pub fn from_vertices(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        Self::new(dim, Some(vertices), None)
    }

    pub fn from_facets(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        Self::new(dim, None, Some(facets))
    }

    pub fn vertices(&self) -> Result<&[Vec<f64>]> {
        self.vertices.as_deref().ok_or(Error::MissingVertices)
    }

    pub fn facets(&self) -> Result<&[Facet]> {
        self.facets.as_deref().ok_or(Error::MissingFacets)
    }

    /// Point membership, by facets when available and by a hull LP otherwise.
    pub fn contains_point(&self, x: &[f64], tol: f64) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates, polytope dimension is {}", x.len(), self.dim)));
        }
        if let Some(fs) = &self.facets {
            return Ok(fs.iter().all(|f| f.slack(x) >= -tol));
        }
        in_convex_hull(self.vertices()?, x, tol)
    }

    /// Vertex-wise containment `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Polytope, tol: f64) -> Result<bool> {
        for v in self.vertices()? {
            if !other.contains_point(v, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `r` with the vertex set inside `[−r, r]ᵈ`.
    pub fn box_radius(&self) -> Result<f64> {
        Ok(self.vertices()?.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs())))
    }

    /// `t·P`.
    pub fn scale(&self, t: f64) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.as_ref().map(|vs| vs.iter().map(|v| v.iter().map(|x| t * x).collect()).collect()),
            facets: self.facets.as_ref().map(|fs| fs.iter().map(|f| Facet::new(f.alpha.clone(), t * f.a)).collect()),
        }
    }

    /// `P + c`.
    pub fn translate(&self, c: &[f64]) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.as_ref().map(|vs| vs.iter().map(|v| v.iter().zip(c).map(|(x, y)| x + y).collect()).collect()),
            facets: self
                .facets
                .as_ref()
                .map(|fs| fs.iter().map(|f| Facet::new(f.alpha.clone(), f.a + f.alpha.iter().zip(c).map(|(x, y)| x * y).sum::<f64>())).collect()),
        }
    }
}

/// All `2ᵈ` sign vectors in `{−1, 1}ᵈ`, ordered by the binary expansion of the index (bit set ↦ −1).
pub fn sign_vectors(d: usize) -> Vec<Vec<f64>> {
    (0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { -1.0 } else { 1.0 }).collect()).collect()
}

fn unit(d: usize, i: usize, s: f64) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = s;
    v
}

/// `[−1, 1]ᵈ` with both representations.
pub fn cube(d: usize) -> Polytope {
    let facets = (0..d).flat_map(|i| [Facet::new(unit(d, i, 1.0), 1.0), Facet::new(unit(d, i, -1.0), 1.0)]).collect();
    Polytope { dim: d, vertices: Some(sign_vectors(d)), facets: Some(facets) }
}

/// The diamond `D_d = conv{±eᵢ}` with facets `ε·x ≤ 1`.
pub fn diamond(d: usize) -> Polytope {
    let vertices = (0..d).flat_map(|i| [unit(d, i, 1.0), unit(d, i, -1.0)]).collect();
    let facets = sign_vectors(d).into_iter().map(|e| Facet::new(e, 1.0)).collect();
    Polytope { dim: d, vertices: Some(vertices), facets: Some(facets) }
}

/// The tetrahedron `conv{(1,1,1), (1,−1,−1), (−1,1,−1), (−1,−1,1)}` centered at 0.
pub fn simplex3() -> Polytope {
    let vertices = simplex3_vertices();
    let facets = vertices.iter().map(|v| Facet::new(v.iter().map(|x| -x).collect(), 1.0)).collect();
    Polytope { dim: 3, vertices: Some(vertices), facets: Some(facets) }
}

pub fn simplex3_vertices() -> Vec<Vec<f64>> {
    vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]]
}

/// The right-angled simplex `conv{0, e₁, …, e_d}`.
pub fn right_simplex(d: usize) -> Polytope {
    let mut vertices = vec![vec![0.0; d]];
    vertices.extend((0..d).map(|i| unit(d, i, 1.0)));
    let mut facets: Vec<Facet> = (0..d).map(|i| Facet::new(unit(d, i, -1.0), 0.0)).collect();
    facets.push(Facet::new(vec![1.0; d], 1.0));
    Polytope { dim: d, vertices: Some(vertices), facets: Some(facets) }
}

/// Regular `k`-gon inscribed in the unit circle, starting at `(1, 0)`.
pub fn regular_polygon(k: usize) -> Polytope {
    let t = std::f64::consts::TAU / k as f64;
    let vertices: Vec<Vec<f64>> = (0..k).map(|j| vec![(t * j as f64).cos(), (t * j as f64).sin()]).collect();
    let facets = (0..k)
        .map(|j| {
            let mid = t * (j as f64 + 0.5);
            Facet::new(vec![mid.cos(), mid.sin()], (t / 2.0).cos())
        })
        .collect();
    Polytope { dim: 2, vertices: Some(vertices), facets: Some(facets) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_satisfy_invariants() {
        for d in 1..=4 {
            cube(d).validate().unwrap();
            diamond(d).validate().unwrap();
            right_simplex(d).validate().unwrap();
        }
        simplex3().validate().unwrap();
        for k in 3..9 {
            regular_polygon(k).validate().unwrap();
        }
    }

    #[test]
    fn inconsistent_representations_are_rejected() {
        let bad = Polytope::new(1, Some(vec![vec![2.0]]), Some(vec![Facet::new(vec![1.0], 1.0)]));
        assert!(bad.is_err());
        let loose = Polytope::new(1, Some(vec![vec![0.5]]), Some(vec![Facet::new(vec![1.0], 1.0)]));
        assert!(loose.is_err());
    }

    #[test]
    fn point_membership_agrees_between_representations() {
        let p = simplex3();
        let v_only = Polytope::from_vertices(simplex3_vertices()).unwrap();
        for x in [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [0.9, 0.9, -0.9], [0.5, 0.5, 0.1]] {
            assert_eq!(p.contains_point(&x, 1e-9).unwrap(), v_only.contains_point(&x, 1e-9).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn diamond_inside_cube() {
        assert!(diamond(3).is_subset_of(&cube(3), 1e-12).unwrap());
        assert!(!cube(3).is_subset_of(&diamond(3), 1e-12).unwrap());
    }

    #[test]
    fn translation_moves_facets() {
        let p = right_simplex(3).translate(&[-0.25, -0.25, -0.25]);
        p.validate().unwrap();
        assert!(p.contains_point(&[0.0, 0.0, 0.0], 0.0).unwrap());
    }
}

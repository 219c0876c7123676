use serde::{Deserialize, Serialize};

use super::Frame;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, HermMatrix};

/// Default cap on the number of frame vectors for the symmetry search.
pub const DEFAULT_SYMMETRY_CAP: usize = 24;
/// Largest group order enumerated.
pub const MAX_GROUP_ORDER: usize = 100_000;

const GRAM_TOL: f64 = 1e-8;
const FIXED_TOL: f64 = 1e-8;

/// Orthogonal maps permuting a frame, with their index permutations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryGroup {
    /// Real orthogonal `d×d` matrices, row-major.
    pub elements: Vec<Vec<Vec<f64>>>,
    /// `perms[g][i] = j` when element `g` maps `vᵢ` to `vⱼ`.
    pub perms: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Indices of the elements fixing `vᵢ`.
    pub fn stabilizer(&self, i: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.perms[g][i] == i).collect()
    }

    /// The orbit of `vᵢ`, sorted.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.perms.iter().map(|p| p[i]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn is_transitive(&self) -> bool {
        self.perms.first().is_some_and(|p| self.orbit(0).len() == p.len())
    }

    /// Closure under composition and inverses, checked exactly on the index permutations.
    pub fn is_closed(&self) -> bool {
        let set: std::collections::HashSet<&Vec<usize>> = self.perms.iter().collect();
        self.perms.iter().all(|a| {
            let mut inv = vec![0; a.len()];
            for (i, &j) in a.iter().enumerate() {
                inv[j] = i;
            }
            set.contains(&inv) && self.perms.iter().all(|b| set.contains(&b.iter().map(|&j| a[j]).collect::<Vec<_>>()))
        })
    }
}

fn gram(f: &Frame) -> Vec<Vec<f64>> {
    f.vectors.iter().map(|a| f.vectors.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect()
}

/// `U = σ⁻¹ Σ v_{π(i)} vᵢᵀ`, the unique linear map with `Uvᵢ = v_{π(i)}` on a tight frame.
fn induced_map(f: &Frame, perm: &[usize]) -> Vec<Vec<f64>> {
    let d = f.dim;
    let mut u = vec![vec![0.0; d]; d];
    for (i, &j) in perm.iter().enumerate() {
        for (r, row) in u.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x += f.vectors[j][r] * f.vectors[i][c] / f.sigma;
            }
        }
    }
    u
}

fn apply(u: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn verify(f: &Frame, u: &[Vec<f64>], perm: &[usize]) -> bool {
    let d = f.dim;
    let scale = f.norm.max(1.0);
    for a in 0..d {
        for b in 0..d {
            let dot: f64 = (0..d).map(|k| u[k][a] * u[k][b]).sum();
            if (dot - if a == b { 1.0 } else { 0.0 }).abs() > GRAM_TOL {
                return false;
            }
        }
    }
    perm.iter().enumerate().all(|(i, &j)| apply(u, &f.vectors[i]).iter().zip(&f.vectors[j]).all(|(x, y)| (x - y).abs() <= GRAM_TOL * scale))
}

/// Enumerates `Sym(Φ)` as the Gram-preserving index permutations, by backtracking with
/// partial-Gram pruning, each verified as an orthogonal map permuting the frame.
pub fn symmetry_group(f: &Frame, cap: usize) -> Result<SymmetryGroup> {
    let n = f.len();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let g = gram(f);
    let tol = GRAM_TOL * f.norm * f.norm;
    let mut perms = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&g, tol, &mut perm, &mut used, &mut perms)?;
    let mut elements = Vec::with_capacity(perms.len());
    let mut kept = Vec::with_capacity(perms.len());
    for p in perms {
        let u = induced_map(f, &p);
        if verify(f, &u, &p) {
            elements.push(u);
            kept.push(p);
        }
    }
    Ok(SymmetryGroup { elements, perms: kept })
}

fn search(g: &[Vec<f64>], tol: f64, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) -> Result<()> {
    let i = perm.len();
    if i == g.len() {
        if out.len() == MAX_GROUP_ORDER {
            return Err(Error::TooLarge { what: "symmetry group order", value: MAX_GROUP_ORDER + 1, max: MAX_GROUP_ORDER });
        }
        out.push(perm.clone());
        return Ok(());
    }
    for j in 0..g.len() {
        if used[j] || (g[j][j] - g[i][i]).abs() > tol {
            continue;
        }
        if perm.iter().enumerate().any(|(k, &pk)| (g[pk][j] - g[k][i]).abs() > tol) {
            continue;
        }
        used[j] = true;
        perm.push(j);
        search(g, tol, perm, used, out)?;
        perm.pop();
        used[j] = false;
    }
    Ok(())
}

/// Per-vector outcome of the vertex reflexivity test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexReflexivity {
    pub reflexive: bool,
    /// Dimension of the subspace fixed by `Stab(vᵢ)`.
    pub fixed_dims: Vec<usize>,
    pub stabilizer_orders: Vec<usize>,
}

/// Whether each stabilizer `Stab(vᵢ)` fixes exactly `span{vᵢ}`.
///
/// The fixed space is the range of the averaged projector `P = |Stab|⁻¹ Σ U`, counted as the
/// eigenvalues of `P` above `1 − 1e−8`.
pub fn is_vertex_reflexive(f: &Frame, g: &SymmetryGroup) -> Result<VertexReflexivity> {
    let d = f.dim;
    let mut fixed_dims = Vec::with_capacity(f.len());
    let mut stabilizer_orders = Vec::with_capacity(f.len());
    let mut reflexive = true;
    for (i, v) in f.vectors.iter().enumerate() {
        let stab = g.stabilizer(i);
        let mut p = vec![vec![0.0; d]; d];
        for &s in &stab {
            for (r, row) in p.iter_mut().enumerate() {
                for (c, x) in row.iter_mut().enumerate() {
                    *x += g.elements[s][r][c] / stab.len() as f64;
                }
            }
        }
        let sym: Vec<Vec<f64>> = (0..d).map(|r| (0..d).map(|c| 0.5 * (p[r][c] + p[c][r])).collect()).collect();
        let dim = eigenvalues(&HermMatrix::from_real_rows(&sym)?)?.into_iter().filter(|&e| e > 1.0 - FIXED_TOL).count();
        let pv = apply(&p, v);
        let holds_v = pv.iter().zip(v).all(|(a, b)| (a - b).abs() <= FIXED_TOL * f.norm.max(1.0));
        reflexive &= dim == 1 && holds_v;
        fixed_dims.push(dim);
        stabilizer_orders.push(stab.len());
    }
    Ok(VertexReflexivity { reflexive, fixed_dims, stabilizer_orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{check_tight, pentagon, pm_basis, s5_orbit, simplex3, theta};

    #[test]
    fn dihedral_orders() {
        let sq = symmetry_group(&pm_basis(2).unwrap(), DEFAULT_SYMMETRY_CAP).unwrap();
        assert_eq!(sq.order(), 8);
        assert!(sq.is_closed() && sq.is_transitive());
        let pent = symmetry_group(&pentagon(), DEFAULT_SYMMETRY_CAP).unwrap();
        assert_eq!(pent.order(), 10);
        assert!(pent.is_closed());
    }

    #[test]
    fn simplex_and_orbit_groups() {
        let s = simplex3();
        let g = symmetry_group(&s, DEFAULT_SYMMETRY_CAP).unwrap();
        assert_eq!(g.order(), 24);
        assert!(is_vertex_reflexive(&s, &g).unwrap().reflexive);
        let o = s5_orbit();
        let go = symmetry_group(&o, DEFAULT_SYMMETRY_CAP).unwrap();
        assert_eq!(go.order(), 120);
        assert!(is_vertex_reflexive(&o, &go).unwrap().reflexive);
    }

    #[test]
    fn theta_group_is_a_direct_sum() {
        let t = theta();
        let g = symmetry_group(&t, DEFAULT_SYMMETRY_CAP).unwrap();
        assert_eq!(g.order(), 1200);
        assert!(!g.is_transitive());
        assert_eq!(g.orbit(0), (0..10).collect::<Vec<_>>());
        assert_eq!(g.orbit(10), (10..15).collect::<Vec<_>>());
        assert!(is_vertex_reflexive(&t, &g).unwrap().reflexive);
        assert!(g.is_closed());
    }

    #[test]
    fn pentagon_is_reflexive() {
        let p = pentagon();
        let g = symmetry_group(&p, DEFAULT_SYMMETRY_CAP).unwrap();
        let r = is_vertex_reflexive(&p, &g).unwrap();
        assert!(r.reflexive);
        assert_eq!(r.stabilizer_orders, vec![2; 5]);
    }

    #[test]
    fn trivial_group_is_not_reflexive() {
        let vs = vec![vec![1.0, 0.0], vec![0.6, 0.8]];
        let f = Frame { dim: 2, vectors: vs, norm: 1.0, sigma: 1.0 };
        let g = SymmetryGroup { elements: vec![vec![vec![1.0, 0.0], vec![0.0, 1.0]]], perms: vec![vec![0, 1]] };
        let r = is_vertex_reflexive(&f, &g).unwrap();
        assert!(!r.reflexive);
        assert_eq!(r.fixed_dims, vec![2, 2]);
        assert!(check_tight(f.vectors).is_err());
    }

    #[test]
    fn cap_exceeded() {
        assert_eq!(symmetry_group(&pm_basis(13).unwrap(), 24), Err(Error::CapExceeded { n: 26, cap: 24 }));
    }
}

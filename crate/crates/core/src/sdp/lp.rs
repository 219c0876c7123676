use crate::error::{Error, Result};

/// Pivot tolerance for the simplex tableau.
pub const PIVOT_TOL: f64 = 1e-9;

/// Equality-constrained feasibility problem `A x = b` with sign constraints on selected variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    /// Row-major constraint matrix, one row per equality.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    /// `true` for `xⱼ ≥ 0`, `false` for a free variable.
    pub nonneg: Vec<bool>,
    /// Threshold on the phase-one objective (sum of artificial variables).
    pub tol: f64,
    /// Pivot cap; `None` picks a size-dependent default.
    pub max_pivots: Option<usize>,
}

impl LpProblem {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, nonneg: Vec<bool>) -> Result<Self> {
        let n = nonneg.len();
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!("{} rows but {} right-hand sides", a.len(), b.len())));
        }
        if let Some(i) = a.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {n}", a[i].len())));
        }
        if a.iter().flatten().chain(&b).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LpProblem { a, b, nonneg, tol: 1e-9, max_pivots: None })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.nonneg.len()
    }

    /// `max_i |(A x − b)_i|`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| (row.iter().zip(x).map(|(r, v)| r * v).sum::<f64>() - bi).abs())
            .fold(0.0, f64::max)
    }
}

/// Result of a phase-one run.
#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub feasible: bool,
    /// A feasible point when `feasible`.
    pub witness: Option<Vec<f64>>,
    /// Final phase-one objective.
    pub infeasibility: f64,
    pub pivots: usize,
}

/// Phase-one simplex with Bland's rule in floating point.
pub fn lp_feasible(p: &LpProblem) -> Result<LpOutcome> {
    let m = p.a.len();
    let n = p.num_vars();
    // Column map: each free variable is split into a difference of two nonnegative columns.
    let mut cols: Vec<(usize, f64)> = Vec::with_capacity(2 * n);
    for (j, &nonneg) in p.nonneg.iter().enumerate() {
        cols.push((j, 1.0));
        if !nonneg {
            cols.push((j, -1.0));
        }
    }
    let nc = cols.len();
    let width = nc + m + 1;
    // Tableau rows: constraint rows then the objective row.
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        let sign = if p.b[i] < 0.0 { -1.0 } else { 1.0 };
        for (c, &(j, s)) in cols.iter().enumerate() {
            t[i][c] = sign * s * p.a[i][j];
        }
        t[i][nc + i] = 1.0;
        t[i][width - 1] = sign * p.b[i];
    }
    // Objective: minimize the sum of artificials, expressed in reduced form.
    let (rows, obj) = t.split_at_mut(m);
    for row in rows.iter() {
        for (c, o) in obj[0].iter_mut().enumerate() {
            if c < nc || c == width - 1 {
                *o -= row[c];
            }
        }
    }
    let mut basis: Vec<usize> = (nc..nc + m).collect();
    let cap = p.max_pivots.unwrap_or(50 * (m + nc) + 1000);
    let mut pivots = 0;
    loop {
        let entering = (0..nc + m).find(|&c| t[m][c] < -PIVOT_TOL);
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][e] > PIVOT_TOL {
                let ratio = t[i][width - 1] / t[i][e];
                let better = match leave {
                    None => true,
                    Some((li, best)) => ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Unbounded direction cannot occur for a bounded-below phase-one objective.
            break;
        };
        if pivots == cap {
            return Err(Error::LpUndecided { iterations: pivots });
        }
        pivot(&mut t, r, e);
        basis[r] = e;
        pivots += 1;
    }
    let infeasibility = (-t[m][width - 1]).max(0.0);
    let scale = 1.0 + p.b.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if infeasibility > p.tol * scale {
        return Ok(LpOutcome { feasible: false, witness: None, infeasibility, pivots });
    }
    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nc {
            let (j, s) = cols[bv];
            x[j] += s * t[i][width - 1];
        }
    }
    Ok(LpOutcome { feasible: true, witness: Some(x), infeasibility, pivots })
}

fn pivot(t: &mut [Vec<f64>], r: usize, e: usize) {
    let pv = t[r][e];
    for v in t[r].iter_mut() {
        *v /= pv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[e];
        if f != 0.0 {
            for (v, pr) in row.iter_mut().zip(&prow) {
                *v -= f * pr;
            }
            row[e] = 0.0;
        }
    }
}

/// Convex weights `β ≥ 0, Σβ = 1, Σβₖ pₖ = target`, if any exist.
pub fn convex_combination(points: &[Vec<f64>], target: &[f64], tol: f64) -> Result<Option<Vec<f64>>> {
    let d = target.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DimensionMismatch("points and target must share one dimension".into()));
    }
    let k = points.len();
    let mut a = vec![vec![1.0; k]];
    let mut b = vec![1.0];
    for i in 0..d {
        a.push(points.iter().map(|p| p[i]).collect());
        b.push(target[i]);
    }
    let prob = LpProblem::new(a, b, vec![true; k])?.with_tol(tol);
    Ok(lp_feasible(&prob)?.witness)
}

/// Whether `target` lies in the convex hull of `points` (equality tolerance `tol`).
pub fn in_convex_hull(points: &[Vec<f64>], target: &[f64], tol: f64) -> Result<bool> {
    Ok(convex_combination(points, target, tol)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_vertices(d: usize) -> Vec<Vec<f64>> {
        (0..1usize << d).map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect()).collect()
    }

    #[test]
    fn simplex_barycenter_is_feasible() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let w = convex_combination(&pts, &[1.0 / 3.0, 1.0 / 3.0], 1e-9).unwrap().unwrap();
        assert!(w.iter().all(|&x| x >= -1e-12));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_outside_cube_is_infeasible() {
        assert!(!in_convex_hull(&cube_vertices(3), &[2.0, 0.0, 0.0], 1e-9).unwrap());
        assert!(in_convex_hull(&cube_vertices(3), &[1.0, -0.5, 0.25], 1e-9).unwrap());
    }

    #[test]
    fn tetrahedron_vertex_is_in_its_hull() {
        let pts = vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]];
        assert!(in_convex_hull(&pts, &[1.0, 1.0, 1.0], 1e-9).unwrap());
        assert!(!in_convex_hull(&pts, &[1.0, 1.0, -1.0], 1e-9).unwrap());
    }

    #[test]
    fn free_variables_and_negative_rhs() {
        // x − y = −3, x ≥ 0, y free.
        let p = LpProblem::new(vec![vec![1.0, -1.0]], vec![-3.0], vec![true, false]).unwrap();
        let out = lp_feasible(&p).unwrap();
        let x = out.witness.unwrap();
        assert!(p.residual(&x) < 1e-12 && x[0] >= 0.0);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = LpProblem::new(vec![vec![1.0, 1.0], vec![2.0, 2.0]], vec![1.0, 2.0], vec![true, true]).unwrap();
        assert!(lp_feasible(&p).unwrap().feasible);
        let q = LpProblem::new(vec![vec![1.0, 1.0], vec![2.0, 2.0]], vec![1.0, 3.0], vec![true, true]).unwrap();
        assert!(!lp_feasible(&q).unwrap().feasible);
    }

    #[test]
    fn pivot_cap_reports_undecided() {
        let mut p = LpProblem::new(vec![vec![1.0, 1.0]], vec![1.0], vec![true, true]).unwrap();
        p.max_pivots = Some(0);
        assert_eq!(lp_feasible(&p), Err(Error::LpUndecided { iterations: 0 }));
    }
}

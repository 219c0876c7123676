use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::affine::AffineProjector;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, HermMatrix};

/// Outcome class of a feasibility run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Feasible,
    /// Residual plateaued away from zero; heuristic, not a certificate.
    Infeasible,
    Undecided,
}

/// Stopping parameters for [`dykstra_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DykstraParams {
    pub max_iter: usize,
    pub tol_feas: f64,
    pub stall_window: usize,
    /// Relative residual decrease over one window below which progress counts as stalled.
    pub stall_rel: f64,
}

impl Default for DykstraParams {
    fn default() -> Self {
        DykstraParams { max_iter: 20_000, tol_feas: 1e-9, stall_window: 500, stall_rel: 1e-4 }
    }
}

/// Result of a feasibility run. `residual` is the final distance between the two iterates
/// (or the affine inconsistency when the affine set is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult {
    pub status: Status,
    pub witness: Option<Vec<HermMatrix>>,
    pub residual: f64,
    pub iterations: usize,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// A "block PSD ∩ affine" feasibility problem.
pub struct BlockPsdProblem<'a, P: AffineProjector + ?Sized> {
    pub projector: &'a P,
    pub params: DykstraParams,
}

impl<'a, P: AffineProjector + ?Sized> BlockPsdProblem<'a, P> {
    pub fn new(projector: &'a P, params: DykstraParams) -> Self {
        BlockPsdProblem { projector, params }
    }

    pub fn block_dims(&self) -> &[usize] {
        self.projector.block_dims()
    }

    /// Affine projection of the zero block list.
    pub fn default_start(&self) -> Vec<HermMatrix> {
        let zeros: Vec<HermMatrix> = self.block_dims().iter().map(|&n| HermMatrix::zeros(n)).collect();
        self.projector.project(&zeros)
    }

    pub fn solve(&self) -> Result<FeasibilityResult> {
        dykstra_solve(self, &self.default_start())
    }
}

fn psd_part(blocks: &[HermMatrix]) -> Result<(Vec<HermMatrix>, f64)> {
    let parts: Vec<(HermMatrix, f64)> = blocks
        .par_iter()
        .map(|b| {
            let e = herm_eig(b)?;
            let min = e.min();
            let proj = if min >= 0.0 { b.clone() } else { e.apply(|l| l.max(0.0)) };
            Ok((proj, min))
        })
        .collect::<Result<_>>()?;
    let min = parts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    Ok((parts.into_iter().map(|p| p.0).collect(), min))
}

fn combine(a: &[HermMatrix], b: &[HermMatrix], sb: f64) -> Vec<HermMatrix> {
    a.iter().zip(b).map(|(x, y)| x.add_scaled(sb, y)).collect()
}

fn distance(a: &[HermMatrix], b: &[HermMatrix]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.sub(y).frobenius_norm().powi(2)).sum::<f64>().sqrt()
}

/// Minimum eigenvalue over a block list, as an independent witness check.
pub fn min_block_eig(blocks: &[HermMatrix]) -> Result<f64> {
    blocks.iter().map(|b| Ok(herm_eig(b)?.min())).try_fold(f64::INFINITY, |acc, m: Result<f64>| Ok(acc.min(m?)))
}

/// Dykstra alternating projections between the affine set and the product of PSD cones.
///
/// Terminates with `Feasible` once an iterate is PSD within `tol_feas` and affine within
/// `tol_feas`, with `Infeasible` when the residual stalls above `10·tol_feas`, and with
/// `Undecided` at `max_iter`.
pub fn dykstra_solve<P: AffineProjector + ?Sized>(p: &BlockPsdProblem<'_, P>, start: &[HermMatrix]) -> Result<FeasibilityResult> {
    let dims = p.block_dims();
    let params = p.params;
    if start.len() != dims.len() || start.iter().zip(dims).any(|(b, &n)| b.dim() != n) {
        return Err(Error::DimensionMismatch(format!("start must be {} blocks of sizes {:?}", dims.len(), dims)));
    }
    let tol = params.tol_feas;
    let inconsistency = p.projector.inconsistency();
    if inconsistency > tol {
        return Ok(FeasibilityResult { status: Status::Infeasible, witness: None, residual: inconsistency, iterations: 0 });
    }
    let mut x: Vec<HermMatrix> = start.to_vec();
    let mut pc: Vec<HermMatrix> = dims.iter().map(|&n| HermMatrix::zeros(n)).collect();
    let mut qc = pc.clone();
    let mut history: Vec<f64> = Vec::with_capacity(params.max_iter.min(1 << 16));
    let mut residual = f64::INFINITY;
    for iter in 0..=params.max_iter {
        // Affine step with correction.
        let xp = combine(&x, &pc, 1.0);
        let y = p.projector.project(&xp);
        pc = combine(&xp, &y, -1.0);
        // PSD step with correction.
        let yq = combine(&y, &qc, 1.0);
        let (x_next, _) = psd_part(&yq)?;
        qc = combine(&yq, &x_next, -1.0);
        residual = distance(&x_next, &y);

        let (_, y_min) = psd_part(&y)?;
        if y_min >= -tol {
            return Ok(FeasibilityResult { status: Status::Feasible, witness: Some(y), residual, iterations: iter });
        }
        if residual <= tol && p.projector.residual(&x_next) <= tol {
            return Ok(FeasibilityResult { status: Status::Feasible, witness: Some(x_next), residual, iterations: iter });
        }
        history.push(residual);
        let w = params.stall_window;
        if w > 0 && history.len() > w && residual > 10.0 * tol {
            let before = history[history.len() - 1 - w];
            if before - residual <= params.stall_rel * residual {
                return Ok(FeasibilityResult { status: Status::Infeasible, witness: None, residual, iterations: iter });
            }
        }
        x = x_next;
    }
    Ok(FeasibilityResult { status: Status::Undecided, witness: None, residual, iterations: params.max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::affine::affine_projector_povm;
    use crate::tuple::HermTuple;

    #[test]
    fn unit_sum_over_two_blocks() {
        // Σ K_v = I only: vertex coordinate constraints vanish with X = 0 at a single repeated point.
        let x = HermTuple::zeros(1, 2);
        let proj = affine_projector_povm(&[vec![0.0], vec![0.0]], &x).unwrap();
        let prob = BlockPsdProblem::new(&proj, DykstraParams::default());
        let res = prob.solve().unwrap();
        assert_eq!(res.status, Status::Feasible);
        let w = res.witness.unwrap();
        for k in &w {
            assert!(k.sub(&HermMatrix::identity(2).scale(0.5)).max_abs() < 1e-14);
        }
    }

    #[test]
    fn commuting_cube_tuple_is_feasible() {
        let x = HermTuple::diagonal(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let verts = vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]];
        let proj = affine_projector_povm(&verts, &x).unwrap();
        let res = BlockPsdProblem::new(&proj, DykstraParams::default()).solve().unwrap();
        assert_eq!(res.status, Status::Feasible);
        let w = res.witness.unwrap();
        assert!(min_block_eig(&w).unwrap() >= -1e-9);
        assert!(proj.residual(&w) <= 1e-9);
    }

    #[test]
    fn pauli_pair_against_diamond_is_not_feasible() {
        let x = HermTuple::from_real(&[vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![vec![1.0, 0.0], vec![0.0, -1.0]]]).unwrap();
        let verts = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let proj = affine_projector_povm(&verts, &x).unwrap();
        let res = BlockPsdProblem::new(&proj, DykstraParams::default()).solve().unwrap();
        assert_ne!(res.status, Status::Feasible);
        assert!(res.residual > 1e-3);
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let x = HermTuple::from_real(&[vec![vec![0.3, 0.2], vec![0.2, -0.1]], vec![vec![0.0, 0.4], vec![0.4, 0.5]]]).unwrap();
        let verts = vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]];
        let proj = affine_projector_povm(&verts, &x).unwrap();
        let prob = BlockPsdProblem::new(&proj, DykstraParams::default());
        assert_eq!(prob.solve().unwrap(), prob.solve().unwrap());
    }

    #[test]
    fn start_shape_is_checked() {
        let x = HermTuple::zeros(1, 2);
        let proj = affine_projector_povm(&[vec![1.0], vec![-1.0]], &x).unwrap();
        let prob = BlockPsdProblem::new(&proj, DykstraParams::default());
        assert!(dykstra_solve(&prob, &[HermMatrix::zeros(2)]).is_err());
    }
}

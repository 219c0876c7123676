//! Small dense feasibility engines: Dykstra alternating projections for "block PSD ∩ affine"
//! systems and a phase-one simplex for equality-constrained LPs.
//!
//! Infeasibility reported by [`dykstra_solve`] is a residual plateau, not a dual certificate.

mod affine;
mod dykstra;
mod lp;

pub use affine::{affine_projector_choi, affine_projector_povm, apply_choi, AffineProjector, EntrywiseAffine, LinearSystem};
pub use dykstra::{dykstra_solve, min_block_eig, BlockPsdProblem, DykstraParams, FeasibilityResult, Status};
pub use lp::{convex_combination, in_convex_hull, lp_feasible, LpOutcome, LpProblem, PIVOT_TOL};

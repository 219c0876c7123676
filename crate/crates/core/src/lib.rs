//! Constructive tools for matrix convex sets at finite matrix scale.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a cyclic Jacobi Hermitian eigensolver,
//!   operator norms, Kronecker products and joint diagonalization.
//! - [`sdp`]: a Dykstra alternating-projection engine for "block PSD ∩ affine"
//!   feasibility and a phase-one simplex for small LPs.
//! - [`sets`]: polytopes, monic linear pencils, and membership oracles for
//!   `Wmin`/`Wmax` of polytopes, the matrix cube, the matrix diamond and the
//!   two matrix balls.
//! - [`dilation`]: commuting (normal) dilations with recomputable residuals.
//! - [`ucp`]: Choi-matrix feasibility for UCP/CCP/CC maps between tuples.
//! - [`frames`]: tight frames, their symmetry groups and vertex reflexivity.
//! - [`witnesses`]: Clifford tuples and other extremal certificates.
//!
//! Every boolean oracle takes an explicit tolerance; heuristic answers
//! (alternating projections, sampled directions) are reported as such.

#![forbid(unsafe_code)]

pub mod dilation;
pub mod error;
pub mod frames;
pub mod json;
pub mod linalg;
pub mod random;
pub mod sdp;
pub mod sets;
pub mod tuple;
pub mod ucp;
pub mod witnesses;

pub use error::{Error, Result};
pub use linalg::{CMatrix, EigenDecomposition, HermMatrix, JointSpectrum};
pub use num_complex::Complex64;
pub use tuple::{GenTuple, HermTuple};

//! Dense complex linear algebra: matrices, Hermitian eigendecomposition, norms and joint spectra.

mod eig;
mod matrix;
mod simdiag;

pub use eig::{
    eigenvalues, herm_eig, herm_opnorm, herm_pinv, max_eig, min_eig, opnorm, project_psd, psd_sqrt, singular_values,
    EigenDecomposition, MAX_SWEEPS,
};
pub use matrix::{kron_sum, CMatrix, HermMatrix, HERMITIAN_TOL};
pub use simdiag::{max_commutator, simultaneous_diagonalize, JointSpectrum, CLUSTER_TOL};

/// Entrywise complex conjugate.
pub fn conj_mat(a: &CMatrix) -> CMatrix {
    a.conj()
}

/// Kronecker product with the left factor indexing the coarse blocks.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    CMatrix::direct_sum(blocks)
}

/// Absolute-plus-relative tolerance `abs + rel·scale`.
pub fn tolerance(abs: f64, rel: f64, scale: f64) -> f64 {
    abs + rel * scale
}

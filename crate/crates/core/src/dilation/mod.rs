//! Commuting dilations `X ≺ T` with recomputable residuals: the flip dilation, rank-one
//! λ-dilations and their specializations, and Naimark dilations of finite POVMs.

mod flip;
mod lambda;
mod naimark;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{max_commutator, opnorm, simultaneous_diagonalize, CMatrix, HermMatrix, JointSpectrum};
use crate::tuple::{GenTuple, HermTuple};

pub use flip::{diamond_dilation, flip_dilation, flip_joint_spectrum, nonsa_flip_dilation, MAX_FLIP_D_GENERAL, MAX_FLIP_D_SA};
pub use lambda::{
    coordinate_projection_dilation, cube_to_diamond_dilation, decompose_identity, frame_dilation, frame_kappa,
    joint_spectrum_rank_one, lambda_dilation, spectrum_in_polytope, tight_frame_bound, LambdaFamily, RANK_ONE_TOL,
};
pub use naimark::{finite_normal_dilation, naimark_dilation, povm_from_dilation, NaimarkDilation, Povm, POVM_SUM_TOL};

/// The dilating tuple: self-adjoint, or normal in the general case.
#[derive(Debug, Clone, PartialEq)]
pub enum DilatedTuple {
    SelfAdjoint(HermTuple),
    Normal(GenTuple),
}

impl DilatedTuple {
    pub fn cmatrices(&self) -> Vec<CMatrix> {
        match self {
            DilatedTuple::SelfAdjoint(t) => t.cmatrices(),
            DilatedTuple::Normal(t) => t.matrices().to_vec(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            DilatedTuple::SelfAdjoint(t) => t.d(),
            DilatedTuple::Normal(t) => t.d(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DilatedTuple::SelfAdjoint(t) => t.n(),
            DilatedTuple::Normal(t) => t.n(),
        }
    }

    pub fn as_hermitian(&self) -> Option<&HermTuple> {
        match self {
            DilatedTuple::SelfAdjoint(t) => Some(t),
            DilatedTuple::Normal(_) => None,
        }
    }

    pub fn to_general(&self) -> GenTuple {
        match self {
            DilatedTuple::SelfAdjoint(t) => t.to_general(),
            DilatedTuple::Normal(t) => t.clone(),
        }
    }

    /// Joint spectrum, through the Hermitian parts `(Re T₁, Im T₁, …)` in the normal case.
    pub fn joint_spectrum(&self, tol: f64) -> Result<(CMatrix, JointSpectrum)> {
        match self {
            DilatedTuple::SelfAdjoint(t) => simultaneous_diagonalize(t.matrices(), tol),
            DilatedTuple::Normal(t) => simultaneous_diagonalize(t.hermitian_parts().matrices(), tol),
        }
    }
}

/// Diagnostics certifying a dilation; all are recomputable from `(T, V, X)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `‖V*V − I‖`.
    pub isometry: f64,
    /// Largest `‖[Tᵢ, Tⱼ]‖`, including `‖[Tᵢ, Tⱼ*]‖` for normal tuples.
    pub commutator: f64,
    /// Largest `‖V*TᵢV − c·Xᵢ‖`.
    pub compression: f64,
    /// Largest `‖TᵢTᵢ* − Tᵢ*Tᵢ‖`; zero for self-adjoint tuples.
    pub normality: f64,
    /// Largest `‖Tᵢ‖`.
    pub max_norm: f64,
}

impl Residuals {
    pub fn compute(t: &DilatedTuple, v: &CMatrix, scale: f64, x: &GenTuple) -> Result<Residuals> {
        let isometry = opnorm(&(&v.adjoint().matmul(v) - &CMatrix::identity(v.cols())))?;
        let mats = t.cmatrices();
        let (mut commutator, _, _) = max_commutator(&mats)?;
        let mut normality = 0.0;
        if let DilatedTuple::Normal(g) = t {
            normality = g.normality_defect()?;
            for a in &mats {
                for b in &mats {
                    commutator = f64::max(commutator, opnorm(&a.commutator(&b.adjoint()))?);
                }
            }
        }
        let mut compression: f64 = 0.0;
        let mut max_norm: f64 = 0.0;
        for (ti, xi) in mats.iter().zip(x.matrices()) {
            compression = compression.max(opnorm(&(&ti.compress(v) - &xi.scale(scale)))?);
            max_norm = max_norm.max(opnorm(ti)?);
        }
        Ok(Residuals { isometry, commutator, compression, normality, max_norm })
    }
}

/// A commuting tuple `T` with an isometry `V` and scale `c` such that `V*TᵢV = c·Xᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dilation {
    pub t: DilatedTuple,
    pub v: CMatrix,
    pub scale: f64,
    pub residuals: Residuals,
}

impl Dilation {
    pub fn new(t: DilatedTuple, v: CMatrix, scale: f64, source: &GenTuple) -> Result<Dilation> {
        let residuals = Residuals::compute(&t, &v, scale, source)?;
        Ok(Dilation { t, v, scale, residuals })
    }

    pub fn self_adjoint(t: HermTuple, v: CMatrix, scale: f64, source: &HermTuple) -> Result<Dilation> {
        Self::new(DilatedTuple::SelfAdjoint(t), v, scale, &source.to_general())
    }

    /// Ambient dimension of `T`.
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// Recomputes the residuals against `source`.
    pub fn recompute(&self, source: &GenTuple) -> Result<Residuals> {
        Residuals::compute(&self.t, &self.v, self.scale, source)
    }

    /// The self-adjoint dilating tuple, if any.
    pub fn hermitian(&self) -> Option<&HermTuple> {
        self.t.as_hermitian()
    }

    /// `min_eig(c·I − Σ εⱼTⱼ)` over sign vectors; for checks like `Σ εⱼTⱼ ≤ dI`.
    pub fn sign_sum_margin(&self, c: f64) -> Result<f64> {
        let t = self.hermitian().ok_or_else(|| crate::error::Error::InvalidInput("sign sums need a self-adjoint tuple".into()))?;
        let id = HermMatrix::identity(t.n());
        let mut worst = f64::INFINITY;
        for eps in crate::sets::sign_vectors(t.d()) {
            worst = worst.min(crate::linalg::min_eig(&id.scale(c).sub(&t.combination(&eps)))?);
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals_detect_bad_compression() {
        let x = HermTuple::scalar(&[0.5]).unwrap();
        let t = HermTuple::scalar(&[0.7]).unwrap();
        let dil = Dilation::self_adjoint(t, CMatrix::identity(1), 1.0, &x).unwrap();
        assert!((dil.residuals.compression - 0.2).abs() < 1e-15);
        assert_eq!(dil.residuals.isometry, 0.0);
    }
}

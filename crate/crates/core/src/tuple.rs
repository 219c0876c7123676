//! Tuples of matrices: Hermitian `(Mₙ)ᵈ_sa` and general `Mₙᵈ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{herm_opnorm, opnorm, CMatrix, HermMatrix};

/// A d-tuple of n×n Hermitian matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct HermTuple {
    n: usize,
    matrices: Vec<HermMatrix>,
}

impl HermTuple {
    pub fn new(matrices: Vec<HermMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidInput("a tuple needs at least one matrix".into()));
        };
        let n = first.dim();
        if n == 0 {
            return Err(Error::InvalidInput("matrices must be at least 1x1".into()));
        }
        if let Some(i) = matrices.iter().position(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch(format!("matrix {i} has size {}, expected {n}", matrices[i].dim())));
        }
        Ok(HermTuple { n, matrices })
    }

    /// Tuple of real symmetric matrices given as row lists.
    pub fn from_real(mats: &[Vec<Vec<f64>>]) -> Result<Self> {
        Self::new(mats.iter().map(|m| HermMatrix::from_real_rows(m)).collect::<Result<_>>()?)
    }

    /// The 1×1 tuple of a point in ℝᵈ.
    pub fn scalar(point: &[f64]) -> Result<Self> {
        Self::new(point.iter().map(|&x| HermMatrix::from_diag(&[x])).collect())
    }

    /// Commuting diagonal tuple whose joint spectrum is the given point list.
    pub fn diagonal(points: &[Vec<f64>]) -> Result<Self> {
        let d = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DimensionMismatch("points must share one dimension".into()));
        }
        Self::new((0..d).map(|i| HermMatrix::from_diag(&points.iter().map(|p| p[i]).collect::<Vec<_>>())).collect())
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        HermTuple { n, matrices: vec![HermMatrix::zeros(n); d] }
    }

    pub fn d(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[HermMatrix] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &HermMatrix {
        &self.matrices[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HermMatrix> {
        self.matrices.iter()
    }

    pub fn cmatrices(&self) -> Vec<CMatrix> {
        self.matrices.iter().map(|m| m.as_cmatrix().clone()).collect()
    }

    pub fn scale(&self, s: f64) -> HermTuple {
        HermTuple { n: self.n, matrices: self.matrices.iter().map(|m| m.scale(s)).collect() }
    }

    /// `(V*XᵢV)ᵢ`.
    pub fn compress(&self, v: &CMatrix) -> HermTuple {
        HermTuple { n: v.cols(), matrices: self.matrices.iter().map(|m| m.compress(v)).collect() }
    }

    /// `Σ cᵢXᵢ`.
    pub fn combination(&self, coeffs: &[f64]) -> HermMatrix {
        assert_eq!(coeffs.len(), self.d());
        let mut acc = HermMatrix::zeros(self.n);
        for (c, m) in coeffs.iter().zip(&self.matrices) {
            if *c != 0.0 {
                acc = acc.add_scaled(*c, m);
            }
        }
        acc
    }

    pub fn norms(&self) -> Result<Vec<f64>> {
        self.matrices.iter().map(herm_opnorm).collect()
    }

    pub fn max_norm(&self) -> Result<f64> {
        Ok(self.norms()?.into_iter().fold(0.0, f64::max))
    }

    /// Fails with the first index whose norm exceeds `1 + tol`.
    pub fn check_contractions(&self, tol: f64) -> Result<()> {
        for (index, norm) in self.norms()?.into_iter().enumerate() {
            if norm > 1.0 + tol {
                return Err(Error::NotContraction { index, norm });
            }
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[HermTuple]) -> Result<HermTuple> {
        let d = parts.first().map_or(0, HermTuple::d);
        if parts.iter().any(|p| p.d() != d) {
            return Err(Error::DimensionMismatch("direct sum parts must share d".into()));
        }
        Self::new((0..d).map(|i| HermMatrix::direct_sum(&parts.iter().map(|p| p.matrices[i].clone()).collect::<Vec<_>>())).collect())
    }

    /// `(X̄ᵢ)ᵢ`, entrywise conjugates.
    pub fn conj(&self) -> HermTuple {
        HermTuple { n: self.n, matrices: self.matrices.iter().map(HermMatrix::conj).collect() }
    }

    pub fn to_general(&self) -> GenTuple {
        GenTuple { n: self.n, matrices: self.cmatrices() }
    }

    /// Entries of a 1×1 tuple as a point.
    pub fn as_point(&self) -> Option<Vec<f64>> {
        (self.n == 1).then(|| self.matrices.iter().map(|m| m[(0, 0)].re).collect())
    }
}

/// A d-tuple of general n×n complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GenTuple {
    n: usize,
    matrices: Vec<CMatrix>,
}

impl GenTuple {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidInput("a tuple needs at least one matrix".into()));
        };
        let n = first.rows();
        if n == 0 {
            return Err(Error::InvalidInput("matrices must be at least 1x1".into()));
        }
        if let Some(i) = matrices.iter().position(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch(format!("matrix {i} is not {n}x{n}")));
        }
        if matrices.iter().any(|m| m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(GenTuple { n, matrices })
    }

    /// The 1×1 tuple of a point in ℂᵈ.
    pub fn scalar(point: &[Complex64]) -> Result<Self> {
        Self::new(point.iter().map(|&z| CMatrix::from_fn(1, 1, |_, _| z)).collect())
    }

    pub fn d(&self) -> usize {
        self.matrices.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &CMatrix {
        &self.matrices[i]
    }

    pub fn compress(&self, v: &CMatrix) -> GenTuple {
        GenTuple { n: v.cols(), matrices: self.matrices.iter().map(|m| m.compress(v)).collect() }
    }

    pub fn scale(&self, s: f64) -> GenTuple {
        GenTuple { n: self.n, matrices: self.matrices.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn norms(&self) -> Result<Vec<f64>> {
        self.matrices.iter().map(opnorm).collect()
    }

    pub fn check_contractions(&self, tol: f64) -> Result<()> {
        for (index, norm) in self.norms()?.into_iter().enumerate() {
            if norm > 1.0 + tol {
                return Err(Error::NotContraction { index, norm });
            }
        }
        Ok(())
    }

    /// `(Re X₁, Im X₁, Re X₂, Im X₂, …)`, a Hermitian 2d-tuple.
    pub fn hermitian_parts(&self) -> HermTuple {
        let mut out = Vec::with_capacity(2 * self.d());
        for m in &self.matrices {
            out.push(HermMatrix::symmetrize(&m.real_part()));
            out.push(HermMatrix::symmetrize(&m.imag_part()));
        }
        HermTuple { n: self.n, matrices: out }
    }

    /// Inverse of [`GenTuple::hermitian_parts`]: `Tⱼ = S₂ⱼ₋₁ + i S₂ⱼ`.
    pub fn from_hermitian_parts(parts: &HermTuple) -> Result<Self> {
        if !parts.d().is_multiple_of(2) {
            return Err(Error::DimensionMismatch("hermitian parts come in pairs".into()));
        }
        let i = Complex64::new(0.0, 1.0);
        Self::new(
            parts
                .matrices()
                .chunks(2)
                .map(|pair| {
                    let mut m = pair[0].as_cmatrix().clone();
                    m.axpy(i, pair[1].as_cmatrix());
                    m
                })
                .collect(),
        )
    }

    /// Largest `‖TᵢTᵢ* − Tᵢ*Tᵢ‖`.
    pub fn normality_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for m in &self.matrices {
            let adj = m.adjoint();
            worst = worst.max(opnorm(&(&m.matmul(&adj) - &adj.matmul(m)))?);
        }
        Ok(worst)
    }

    /// The tuple as Hermitian matrices, if every member is Hermitian within `tol`.
    pub fn to_hermitian(&self, tol: f64) -> Result<HermTuple> {
        HermTuple::new(self.matrices.iter().map(|m| HermMatrix::with_tol(m.clone(), tol)).collect::<Result<_>>()?)
    }
}

impl From<HermTuple> for GenTuple {
    fn from(t: HermTuple) -> GenTuple {
        t.to_general()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mixed_sizes() {
        let r = HermTuple::new(vec![HermMatrix::identity(2), HermMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
        assert!(HermTuple::new(vec![]).is_err());
    }

    #[test]
    fn hermitian_parts_round_trip() {
        let m = CMatrix::from_fn(2, 2, |i, j| Complex64::new(i as f64, j as f64 + 1.0));
        let g = GenTuple::new(vec![m.clone()]).unwrap();
        let parts = g.hermitian_parts();
        assert_eq!(parts.d(), 2);
        let back = GenTuple::from_hermitian_parts(&parts).unwrap();
        assert!((back.get(0) - &m).max_abs() < 1e-15);
    }

    #[test]
    fn contraction_check_names_index() {
        let t = HermTuple::new(vec![HermMatrix::identity(1), HermMatrix::from_diag(&[1.01])]).unwrap();
        assert!(matches!(t.check_contractions(1e-9), Err(Error::NotContraction { index: 1, .. })));
    }

    #[test]
    fn diagonal_tuple_from_points() {
        let t = HermTuple::diagonal(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.get(1)[(1, 1)].re, 4.0);
    }
}

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{min_eig, CMatrix, HermMatrix};
use crate::tuple::{GenTuple, HermTuple};

/// Monic linear pencil `L(x) = I − Σ Aⱼ xⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Pencil {
    SelfAdjoint(HermTuple),
    General(GenTuple),
}

impl Pencil {
    pub fn d(&self) -> usize {
        match self {
            Pencil::SelfAdjoint(a) => a.d(),
            Pencil::General(a) => a.d(),
        }
    }

    /// Size of the coefficient matrices.
    pub fn size(&self) -> usize {
        match self {
            Pencil::SelfAdjoint(a) => a.n(),
            Pencil::General(a) => a.n(),
        }
    }

    fn coefficients(&self) -> Vec<CMatrix> {
        match self {
            Pencil::SelfAdjoint(a) => a.cmatrices(),
            Pencil::General(a) => a.matrices().to_vec(),
        }
    }
}

/// Tuples a pencil can be evaluated on.
pub trait TupleArg {
    fn d(&self) -> usize;
    fn n(&self) -> usize;
    fn members(&self) -> Vec<CMatrix>;
}

impl TupleArg for HermTuple {
    fn d(&self) -> usize {
        HermTuple::d(self)
    }
    fn n(&self) -> usize {
        HermTuple::n(self)
    }
    fn members(&self) -> Vec<CMatrix> {
        self.cmatrices()
    }
}

impl TupleArg for GenTuple {
    fn d(&self) -> usize {
        GenTuple::d(self)
    }
    fn n(&self) -> usize {
        GenTuple::n(self)
    }
    fn members(&self) -> Vec<CMatrix> {
        self.matrices().to_vec()
    }
}

/// `Re(I ⊗ I − Σ Aⱼ ⊗ Xⱼ)`.
pub fn pencil_eval<T: TupleArg + ?Sized>(a: &Pencil, x: &T) -> Result<HermMatrix> {
    if a.d() != x.d() {
        return Err(Error::DimensionMismatch(format!("pencil has d = {}, tuple has d = {}", a.d(), x.d())));
    }
    let size = a.size() * x.n();
    let mut l = CMatrix::identity(size);
    for (aj, xj) in a.coefficients().iter().zip(x.members()) {
        l.axpy(Complex64::new(-1.0, 0.0), &aj.kron(&xj));
    }
    Ok(HermMatrix::symmetrize(&l))
}

/// `min_eig(Re L(X)) ≥ −tol`.
pub fn pencil_member<T: TupleArg + ?Sized>(a: &Pencil, x: &T, tol: f64) -> Result<bool> {
    Ok(pencil_margin(a, x)? >= -tol)
}

/// `min_eig(Re L(X))`.
pub fn pencil_margin<T: TupleArg + ?Sized>(a: &Pencil, x: &T) -> Result<f64> {
    min_eig(&pencil_eval(a, x)?)
}

/// The cube pencil `Cⱼ = diag(E_jj, −E_jj)` on ℂ²ᵈ, whose self-adjoint domain is the matrix cube.
pub fn cube_pencil(d: usize) -> Pencil {
    let mats = (0..d)
        .map(|j| {
            let mut diag = vec![0.0; 2 * d];
            diag[j] = 1.0;
            diag[d + j] = -1.0;
            HermMatrix::from_diag(&diag)
        })
        .collect();
    Pencil::SelfAdjoint(HermTuple::new(mats).expect("nonempty cube pencil"))
}

/// The switch matrices `Bⱼ = E_{1,j+1} + E_{j+1,1}` on ℂ^{d+1}.
pub fn switch_matrices(d: usize) -> HermTuple {
    let mats = (0..d)
        .map(|j| {
            let mut m = CMatrix::zeros(d + 1, d + 1);
            m[(0, j + 1)] = Complex64::new(1.0, 0.0);
            m[(j + 1, 0)] = Complex64::new(1.0, 0.0);
            HermMatrix::symmetrize(&m)
        })
        .collect();
    HermTuple::new(mats).expect("nonempty switch tuple")
}

/// The real-ball pencil with `L(x)` the arrow matrix `[[1, xᵀ], [x, I]]`.
pub fn ball_pencil(d: usize) -> Pencil {
    Pencil::SelfAdjoint(switch_matrices(d).scale(-1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pencil_gives_identity() {
        let a = Pencil::SelfAdjoint(HermTuple::zeros(2, 3));
        let x = HermTuple::from_real(&[vec![vec![1.0, 2.0], vec![2.0, 0.0]], vec![vec![0.0, 0.0], vec![0.0, 5.0]]]).unwrap();
        let l = pencil_eval(&a, &x).unwrap();
        assert_eq!(l.as_cmatrix(), &CMatrix::identity(6));
        assert!(pencil_member(&a, &HermTuple::zeros(2, 2), 0.0).unwrap());
    }

    #[test]
    fn cube_pencil_is_block_diagonal() {
        let x = HermTuple::from_real(&[vec![vec![0.5, 0.1], vec![0.1, -0.2]], vec![vec![0.3, 0.0], vec![0.0, 0.9]]]).unwrap();
        let l = pencil_eval(&cube_pencil(2), &x).unwrap();
        // Blocks in order: E11⊗(I−X1), E22⊗(I−X2), E11⊗(I+X1), E22⊗(I+X2).
        let blocks = [
            HermMatrix::identity(2).sub(x.get(0)),
            HermMatrix::identity(2).sub(x.get(1)),
            HermMatrix::identity(2).add(x.get(0)),
            HermMatrix::identity(2).add(x.get(1)),
        ];
        let expected = HermMatrix::direct_sum(&blocks);
        assert!(l.sub(&expected).max_abs() < 1e-15);
    }

    #[test]
    fn cube_pencil_rejects_large_entry() {
        let x = HermTuple::from_real(&[vec![vec![1.2]], vec![vec![0.0]]]).unwrap();
        assert!(!pencil_member(&cube_pencil(2), &x, 1e-12).unwrap());
    }

    #[test]
    fn ball_pencil_on_scalars() {
        let inside = HermTuple::scalar(&[0.6, 0.8]).unwrap();
        let outside = HermTuple::scalar(&[0.7, 0.8]).unwrap();
        assert!(pencil_member(&ball_pencil(2), &inside, 1e-12).unwrap());
        assert!(!pencil_member(&ball_pencil(2), &outside, 1e-12).unwrap());
    }

    #[test]
    fn d_mismatch_is_an_error() {
        assert!(pencil_eval(&cube_pencil(2), &HermTuple::zeros(3, 1)).is_err());
    }
}

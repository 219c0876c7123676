use num_complex::Complex64;

use super::{DilatedTuple, Dilation};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMatrix, HermMatrix, JointSpectrum};
use crate::sets::{diamond_worst_sign, sign_vectors};
use crate::tuple::{GenTuple, HermTuple};

/// Largest d accepted by the self-adjoint flip dilation.
pub const MAX_FLIP_D_SA: usize = 16;
/// Largest d accepted by the general (Re/Im split) flip dilation.
pub const MAX_FLIP_D_GENERAL: usize = 8;
/// Largest ambient dimension materialized as a dense matrix.
pub const MAX_AMBIENT_DIM: usize = 4096;

/// Contraction tolerance on `‖Xᵢ‖ ≤ 1`.
pub const CONTRACTION_TOL: f64 = 1e-9;

/// Bit flipped by `Wⱼ` on the `2^{d−1}` basis (index `j` is 0-based; `W₀ = I`).
fn flip_mask(d: usize, j: usize) -> usize {
    if j == 0 {
        0
    } else {
        1 << (d - 1 - j)
    }
}

fn check_size(n: usize, d: usize, cap: usize) -> Result<usize> {
    if d > cap {
        return Err(Error::TooLarge { what: "d", value: d, max: cap });
    }
    let dim = n << (d - 1);
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::TooLarge { what: "dilation dimension", value: dim, max: MAX_AMBIENT_DIM });
    }
    Ok(dim)
}

/// `Tᵢ = Σⱼ Xⱼ ⊗ WⱼWᵢ` on `ℂⁿ ⊗ (ℂ²)^{⊗(d−1)}` without the contraction check.
fn flip_tuple(x: &HermTuple) -> (HermTuple, CMatrix) {
    let d = x.d();
    let n = x.n();
    let k = 1usize << (d - 1);
    let ts = (0..d)
        .map(|i| {
            let mut t = CMatrix::zeros(n * k, n * k);
            for (j, xj) in x.iter().enumerate() {
                let mask = flip_mask(d, j) ^ flip_mask(d, i);
                for r in 0..n {
                    for s in 0..n {
                        let z = xj[(r, s)];
                        if z == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for b in 0..k {
                            t[(r * k + b, s * k + (b ^ mask))] += z;
                        }
                    }
                }
            }
            HermMatrix::symmetrize(&t)
        })
        .collect();
    let v = CMatrix::from_fn(n * k, n, |row, col| Complex64::new(if row == col * k { 1.0 } else { 0.0 }, 0.0));
    (HermTuple::new(ts).expect("flip tuple is consistent"), v)
}

/// Commuting self-adjoint dilation of Hermitian contractions with `‖Tᵢ‖ ≤ d`, on dimension `n·2^{d−1}`.
///
/// `T₁ = Σ Xⱼ ⊗ Wⱼ` with `Wⱼ` the flip in tensor slot `j−1`, `Tᵢ = T₁(I ⊗ Wᵢ)`, and
/// `V h = h ⊗ e₁ ⊗ ⋯ ⊗ e₁`.
pub fn flip_dilation(x: &HermTuple) -> Result<Dilation> {
    check_size(x.n(), x.d(), MAX_FLIP_D_SA)?;
    x.check_contractions(CONTRACTION_TOL)?;
    let (t, v) = flip_tuple(x);
    Dilation::self_adjoint(t, v, 1.0, x)
}

/// The joint spectrum of the flip dilation in closed form: `{s·μ : s ∈ {±1}ᵈ, s₁ = 1, μ ∈ σ(Σ sⱼXⱼ)}`.
pub fn flip_joint_spectrum(x: &HermTuple) -> Result<JointSpectrum> {
    let d = x.d();
    let mut points = Vec::with_capacity(x.n() << (d - 1));
    for s in sign_vectors(d).into_iter().filter(|s| s[0] == 1.0) {
        for mu in herm_eig(&x.combination(&s))?.eigenvalues {
            points.push(s.iter().map(|si| si * mu).collect());
        }
    }
    Ok(JointSpectrum::new(points))
}

/// Commuting normal dilation of general contractions with `‖Tⱼ‖ ≤ 2√2·d`.
///
/// The `2d` Hermitian parts are flip-dilated to `S` and recombined as `Tⱼ = S₂ⱼ₋₁ + i S₂ⱼ`.
pub fn nonsa_flip_dilation(x: &GenTuple) -> Result<Dilation> {
    check_size(x.n(), 2 * x.d(), 2 * MAX_FLIP_D_GENERAL)?;
    if x.d() > MAX_FLIP_D_GENERAL {
        return Err(Error::TooLarge { what: "d", value: x.d(), max: MAX_FLIP_D_GENERAL });
    }
    x.check_contractions(CONTRACTION_TOL)?;
    let (s, v) = flip_tuple(&x.hermitian_parts());
    let t = GenTuple::from_hermitian_parts(&s)?;
    Dilation::new(DilatedTuple::Normal(t), v, 1.0, x)
}

/// Commuting self-adjoint contractive dilation of a tuple with `Σ εⱼXⱼ ≤ I` for all signs ε.
pub fn diamond_dilation(x: &HermTuple) -> Result<Dilation> {
    let (eps, margin) = diamond_worst_sign(x)?;
    if margin < -CONTRACTION_TOL {
        return Err(Error::Precondition(format!("sign vector {eps:?} gives I - sum eps_j X_j with min eigenvalue {margin:e}")));
    }
    check_size(x.n(), x.d(), MAX_FLIP_D_SA)?;
    let (t, v) = flip_tuple(x);
    Dilation::self_adjoint(t, v, 1.0, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_contraction_tuple, random_general_contraction_tuple, rng_from_seed};

    fn pauli() -> HermTuple {
        HermTuple::from_real(&[vec![vec![0.0, 1.0], vec![1.0, 0.0]], vec![vec![1.0, 0.0], vec![0.0, -1.0]]]).unwrap()
    }

    #[test]
    fn d1_is_the_identity_ampliation() {
        let x = HermTuple::from_real(&[vec![vec![0.2, 0.3], vec![0.3, -0.5]]]).unwrap();
        let dil = flip_dilation(&x).unwrap();
        assert_eq!(dil.v, CMatrix::identity(2));
        assert_eq!(dil.hermitian().unwrap(), &x);
    }

    #[test]
    fn pauli_pair() {
        let dil = flip_dilation(&pauli()).unwrap();
        assert_eq!(dil.dim(), 4);
        let r = dil.residuals;
        assert_eq!(r.commutator, 0.0);
        assert!(r.compression < 1e-15);
        assert!((r.max_norm - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn joint_spectrum_matches_closed_form() {
        let mut rng = rng_from_seed(1);
        for d in 1..=4 {
            let x = random_contraction_tuple(&mut rng, d, 3);
            let dil = flip_dilation(&x).unwrap();
            let (_, js) = dil.t.joint_spectrum(1e-9).unwrap();
            assert!(js.multiset_eq(&flip_joint_spectrum(&x).unwrap(), 1e-8), "d = {d}");
        }
    }

    #[test]
    fn non_contraction_names_index() {
        let x = HermTuple::scalar(&[0.5, 1.5]).unwrap();
        assert!(matches!(flip_dilation(&x), Err(Error::NotContraction { index: 1, .. })));
    }

    #[test]
    fn general_scalar_unitary() {
        let u = Complex64::from_polar(1.0, 0.7);
        let x = GenTuple::scalar(&[u]).unwrap();
        let dil = nonsa_flip_dilation(&x).unwrap();
        assert_eq!(dil.dim(), 2);
        assert!(dil.residuals.compression < 1e-15);
        assert!(dil.residuals.normality < 1e-15);
    }

    #[test]
    fn general_nilpotent() {
        let x = GenTuple::new(vec![CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])]).unwrap();
        let dil = nonsa_flip_dilation(&x).unwrap();
        let r = dil.residuals;
        assert!(r.compression < 1e-14 && r.commutator < 1e-14 && r.normality < 1e-14);
        assert!(r.max_norm <= 2.0 * 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn general_random_pair() {
        let mut rng = rng_from_seed(2);
        let x = random_general_contraction_tuple(&mut rng, 2, 2);
        let dil = nonsa_flip_dilation(&x).unwrap();
        let r = dil.residuals;
        assert!(r.compression < 1e-12 && r.commutator < 1e-12 && r.normality < 1e-12);
        assert!(r.max_norm <= 4.0 * 2f64.sqrt());
    }

    #[test]
    fn diamond_examples() {
        let half = pauli().scale(0.5);
        let dil = diamond_dilation(&half).unwrap();
        assert!(dil.residuals.max_norm <= 1.0 + 1e-12);
        let bad = HermTuple::from_real(&[vec![vec![1.0, 0.0], vec![0.0, 0.0]], vec![vec![1.0, 0.0], vec![0.0, 0.0]]]).unwrap();
        match diamond_dilation(&bad) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("[1.0, 1.0]")),
            other => panic!("unexpected {other:?}"),
        }
        // diag(1,0), diag(0,−1) satisfies every sign inequality, so it is accepted.
        let ok = HermTuple::new(vec![HermMatrix::from_diag(&[1.0, 0.0]), HermMatrix::from_diag(&[0.0, -1.0])]).unwrap();
        assert!(diamond_dilation(&ok).is_ok());
    }

    #[test]
    fn caps_are_enforced() {
        let x = HermTuple::zeros(17, 1);
        assert!(matches!(flip_dilation(&x), Err(Error::TooLarge { .. })));
        let g = GenTuple::new(vec![CMatrix::zeros(1, 1); 9]).unwrap();
        assert!(matches!(nonsa_flip_dilation(&g), Err(Error::TooLarge { .. })));
    }
}

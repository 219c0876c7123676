use super::Dilation;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, min_eig, opnorm, CMatrix, HermMatrix};
use crate::sdp::convex_combination;
use crate::tuple::HermTuple;

/// Default bound on `‖ΣAⱼ − I‖`.
pub const POVM_SUM_TOL: f64 = 1e-9;

const PSD_TOL: f64 = 1e-10;

/// A finitely supported POVM: atoms `w⁽ʲ⁾ ∈ ℝᵈ` with PSD effects `Aⱼ` summing to `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    pub atoms: Vec<Vec<f64>>,
    pub effects: Vec<HermMatrix>,
}

impl Povm {
    /// Validates with the default tolerances.
    pub fn new(atoms: Vec<Vec<f64>>, effects: Vec<HermMatrix>) -> Result<Self> {
        Self::with_tol(atoms, effects, POVM_SUM_TOL)
    }

    /// Validates with `min_eig(Aⱼ) ≥ −tol/10` and `‖ΣAⱼ − I‖ ≤ tol`.
    pub fn with_tol(atoms: Vec<Vec<f64>>, effects: Vec<HermMatrix>, tol: f64) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != effects.len() {
            return Err(Error::DimensionMismatch(format!("{} atoms for {} effects", atoms.len(), effects.len())));
        }
        let d = atoms[0].len();
        if atoms.iter().any(|a| a.len() != d) {
            return Err(Error::DimensionMismatch("atoms must share one dimension".into()));
        }
        let n = effects[0].dim();
        if effects.iter().any(|e| e.dim() != n) {
            return Err(Error::DimensionMismatch("effects must share one size".into()));
        }
        let psd_tol = PSD_TOL.max(tol / 10.0);
        let mut sum = HermMatrix::zeros(n);
        for (index, e) in effects.iter().enumerate() {
            let m = min_eig(e)?;
            if m < -psd_tol {
                return Err(Error::NotPsd { index, min_eig: m });
            }
            sum = sum.add(e);
        }
        let dev = opnorm(&sum.sub(&HermMatrix::identity(n)))?;
        if dev > tol {
            return Err(Error::InvalidInput(format!("effects sum to I only up to {dev:e}")));
        }
        Ok(Povm { atoms, effects })
    }

    pub fn d(&self) -> usize {
        self.atoms[0].len()
    }

    pub fn n(&self) -> usize {
        self.effects[0].dim()
    }

    /// `Xᵢ = Σⱼ w⁽ʲ⁾ᵢ Aⱼ`.
    pub fn first_moment(&self) -> HermTuple {
        let mats = (0..self.d())
            .map(|i| {
                let mut m = HermMatrix::zeros(self.n());
                for (w, a) in self.atoms.iter().zip(&self.effects) {
                    m = m.add_scaled(w[i], a);
                }
                m
            })
            .collect();
        HermTuple::new(mats).expect("effects share one size")
    }

    /// Moves every atom onto the given vertices by convex weights, giving a POVM `(Kᵥ)`.
    ///
    /// Fails with a precondition error when some atom is outside the vertex hull.
    pub fn push_to_vertices(&self, vertices: &[Vec<f64>], tol: f64) -> Result<Povm> {
        let n = self.n();
        let mut ks = vec![HermMatrix::zeros(n); vertices.len()];
        for (w, a) in self.atoms.iter().zip(&self.effects) {
            let c = convex_combination(vertices, w, tol)?.ok_or_else(|| Error::Precondition(format!("atom {w:?} is outside the polytope")))?;
            for (k, cv) in ks.iter_mut().zip(c) {
                if cv > 0.0 {
                    *k = k.add_scaled(cv, a);
                }
            }
        }
        Povm::with_tol(vertices.to_vec(), ks, POVM_SUM_TOL.max(10.0 * tol))
    }
}

/// Projection-valued dilation `(Eⱼ)` with an isometry `W` such that `W*EⱼW = Aⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NaimarkDilation {
    pub projections: Vec<HermMatrix>,
    pub w: CMatrix,
}

/// `W` stacks `Aⱼ^{1/2}` (eigenvalues clipped at 0) and `Eⱼ` projects onto block `j` of `ℂⁿᴹ`.
pub fn naimark_dilation(p: &Povm) -> Result<NaimarkDilation> {
    let n = p.n();
    let m = p.effects.len();
    let mut w = CMatrix::zeros(n * m, n);
    for (j, a) in p.effects.iter().enumerate() {
        let root = herm_eig(a)?.apply(|x| x.max(0.0).sqrt());
        w.set_block(j * n, 0, &root);
    }
    let projections = (0..m)
        .map(|j| HermMatrix::from_diag(&(0..n * m).map(|r| if r / n == j { 1.0 } else { 0.0 }).collect::<Vec<_>>()))
        .collect();
    Ok(NaimarkDilation { projections, w })
}

/// Commuting tuple `Yᵢ = Σⱼ w⁽ʲ⁾ᵢEⱼ` dilating the first moment of `p`.
///
/// The source tuple of the returned dilation is [`Povm::first_moment`].
pub fn finite_normal_dilation(p: &Povm) -> Result<Dilation> {
    let nd = naimark_dilation(p)?;
    let n = p.n();
    let diag = |i: usize| HermMatrix::from_diag(&(0..n * p.effects.len()).map(|r| p.atoms[r / n][i]).collect::<Vec<_>>());
    let y = HermTuple::new((0..p.d()).map(diag).collect())?;
    Dilation::self_adjoint(y, nd.w, 1.0, &p.first_moment())
}

/// POVM on the joint spectrum of a self-adjoint dilation: `Aₘ = V*PₘV` for the spectral
/// projection `Pₘ` of each distinct joint eigenvalue (merged within `tol`).
///
/// The first moment is `scale·X`.
pub fn povm_from_dilation(dil: &Dilation, tol: f64) -> Result<Povm> {
    let t = dil.hermitian().ok_or_else(|| Error::InvalidInput("POVM extraction needs a self-adjoint dilation".into()))?;
    let (u, js) = dil.t.joint_spectrum(tol)?;
    let scale = t.max_norm()?.max(1.0);
    let mut atoms: Vec<Vec<f64>> = Vec::new();
    let mut cols: Vec<Vec<usize>> = Vec::new();
    for (c, pt) in js.points.iter().enumerate() {
        match atoms.iter().position(|a| a.iter().zip(pt).all(|(x, y)| (x - y).abs() <= tol * scale)) {
            Some(g) => cols[g].push(c),
            None => {
                atoms.push(pt.clone());
                cols.push(vec![c]);
            }
        }
    }
    let vu = dil.v.adjoint().matmul(&u);
    let effects = cols
        .iter()
        .map(|cs| {
            let b = vu.select_columns(cs);
            HermMatrix::symmetrize(&b.matmul(&b.adjoint()))
        })
        .collect();
    Povm::with_tol(atoms, effects, POVM_SUM_TOL.max(tol))
}

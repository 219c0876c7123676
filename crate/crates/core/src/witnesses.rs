//! Extremal examples and sharpness certificates: Clifford tuples, the constants `d` and `√d`,
//! a non-scalable contraction, witnesses separating `Wmin(ball) ⊊ 𝔅 ⊊ 𝔅^•`, and an empirical
//! harness bracketing inclusion scales.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_opnorm, min_eig, singular_values, CMatrix, HermMatrix};
use crate::random::{gaussian, random_ball_member, random_hermitian, random_unit_vector, rng_from_seed};
use crate::sdp::{DykstraParams, Status};
use crate::sets::{
    ball_margin, ball_member, cube, diamond, pencil_member, regular_polygon, selfdual_member, selfdual_norm, simplex3,
    switch_matrices, wmax_margin, wmin_member, Pencil, Polytope,
};
use crate::tuple::HermTuple;

/// Largest d for [`clifford_tuple`].
pub const MAX_CLIFFORD_D: usize = 12;
/// Largest d for the tensor-square checks.
pub const MAX_SHARPNESS_D: usize = 8;
/// Largest d for [`tau_rho_harness`].
pub const MAX_HARNESS_D: usize = 6;
/// Dense `selfdual_norm` is cross-checked up to this d.
const DENSE_SELFDUAL_D: usize = 4;

/// A signed permutation matrix: row `r` has the entry `sign[r]` in column `perm[r]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), sign: vec![1; n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn kron(&self, other: &SignedPerm) -> SignedPerm {
        let m = other.dim();
        let mut perm = Vec::with_capacity(self.dim() * m);
        let mut sign = Vec::with_capacity(self.dim() * m);
        for r in 0..self.dim() {
            for s in 0..m {
                perm.push(self.perm[r] * m + other.perm[s]);
                sign.push(self.sign[r] * other.sign[s]);
            }
        }
        SignedPerm { perm, sign }
    }

    /// `self · other`.
    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        let perm = self.perm.iter().map(|&c| other.perm[c]).collect();
        let sign = self.perm.iter().zip(&self.sign).map(|(&c, &s)| s * other.sign[c]).collect();
        SignedPerm { perm, sign }
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (r, (&c, &s)) in self.perm.iter().zip(&self.sign).enumerate() {
            m[(r, c)] = Complex64::new(s as f64, 0.0);
        }
        m
    }

    /// `y += c · self · x`.
    fn apply_add(&self, c: f64, x: &[f64], y: &mut [f64]) {
        for (r, (&p, &s)) in self.perm.iter().zip(&self.sign).enumerate() {
            y[r] += c * s as f64 * x[p];
        }
    }
}

/// Anticommuting self-adjoint unitaries `B₁, …, B_d` of size `2^{d−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordTuple {
    pub d: usize,
    pub matrices: Vec<SignedPerm>,
}

impl CliffordTuple {
    pub fn size(&self) -> usize {
        1 << (self.d - 1)
    }

    /// Dense tuple; allocates `d·4^{d−1}` entries.
    pub fn to_tuple(&self) -> HermTuple {
        HermTuple::new(self.matrices.iter().map(|b| HermMatrix::symmetrize(&b.to_cmatrix())).collect()).expect("equal sizes")
    }

    /// Number of pairs `(i, j)` violating `BᵢBⱼ + BⱼBᵢ = 2δᵢⱼI`, checked in exact integer arithmetic.
    pub fn anticommutation_violations(&self) -> usize {
        let mut bad = 0;
        for (i, a) in self.matrices.iter().enumerate() {
            for (j, b) in self.matrices.iter().enumerate() {
                let (ab, ba) = (a.mul(b), b.mul(a));
                let ok = if i == j {
                    ab == SignedPerm::identity(a.dim())
                } else {
                    ab.perm == ba.perm && ab.sign.iter().zip(&ba.sign).all(|(x, y)| x + y == 0)
                };
                bad += usize::from(!ok);
            }
        }
        bad
    }

    /// `y = (Σ Bᵢ ⊗ Bᵢ) x`.
    fn tensor_square_apply(&self, squares: &[SignedPerm], x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        for s in squares {
            s.apply_add(1.0, x, &mut y);
        }
        y
    }

    fn tensor_squares(&self) -> Vec<SignedPerm> {
        self.matrices.iter().map(|b| b.kron(b)).collect()
    }
}

/// Builds the tuple by `B₁ = [1]`, `B′ᵢ = σx ⊗ Bᵢ`, `B′_{d+1} = σz ⊗ I`.
pub fn clifford_tuple(d: usize) -> Result<CliffordTuple> {
    if d == 0 || d > MAX_CLIFFORD_D {
        return Err(Error::TooLarge { what: "Clifford d (1..=12)", value: d, max: MAX_CLIFFORD_D });
    }
    let sx = SignedPerm { perm: vec![1, 0], sign: vec![1, 1] };
    let sz = SignedPerm { perm: vec![0, 1], sign: vec![1, -1] };
    let mut bs = vec![SignedPerm::identity(1)];
    for _ in 1..d {
        let size = bs[0].dim();
        let mut next: Vec<SignedPerm> = bs.iter().map(|b| sx.kron(b)).collect();
        next.push(sz.kron(&SignedPerm::identity(size)));
        bs = next;
    }
    Ok(CliffordTuple { d, matrices: bs })
}

/// Certificates that `d` is attained by `Σ Bᵢ ⊗ Bᵢ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub d: usize,
    /// Largest eigenvalue of `Σ Bᵢ ⊗ Bᵢ` by shifted power iteration.
    pub lambda_max: f64,
    /// Rayleigh quotient at `vec(I)`, an exact lower bound; `d` is the triangle-inequality upper bound.
    pub lambda_certificate: f64,
    /// Largest `‖(Σ vᵢBᵢ)² − ‖v‖²I‖` over sampled unit `v`.
    pub square_identity_error: f64,
    /// Largest `‖Σ vᵢBᵢ‖` over the same samples.
    pub max_sampled_norm: f64,
    /// `(C, min_eig(I − C⁻¹ Σ Bᵢ⊗Bᵢ))` on a grid around `C = d`.
    pub margins: Vec<(f64, f64)>,
    pub anticommutation_violations: usize,
}

fn power_lambda_max(b: &CliffordTuple, seed: u64) -> f64 {
    let squares = b.tensor_squares();
    let n = squares[0].dim();
    let shift = b.d as f64;
    let mut rng = rng_from_seed(seed);
    let mut x: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
    let mut rq = f64::NEG_INFINITY;
    for _ in 0..20_000 {
        let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= nrm);
        let mut y = b.tensor_square_apply(&squares, &x);
        let next = x.iter().zip(&y).map(|(a, c)| a * c).sum::<f64>();
        y.iter_mut().zip(&x).for_each(|(v, xi)| *v += shift * xi);
        x = y;
        if (next - rq).abs() <= 1e-14 * shift {
            return next;
        }
        rq = next;
    }
    rq
}

/// `λ_max(Σ Bᵢ⊗Bᵢ) = d` and `min_eig(I − C⁻¹ΣBᵢ⊗Bᵢ) = 1 − d/C`, with `Σ vᵢBᵢ ≤ I` on sampled unit `v`.
pub fn sharpness_check(d: usize, samples: usize, seed: u64) -> Result<SharpnessReport> {
    if d == 0 || d > MAX_SHARPNESS_D {
        return Err(Error::TooLarge { what: "d (tensor size 4^(d-1))", value: d, max: MAX_SHARPNESS_D });
    }
    let b = clifford_tuple(d)?;
    let lambda_max = power_lambda_max(&b, seed);
    let n = b.size();
    let squares = b.tensor_squares();
    let vec_i: Vec<f64> = (0..n * n).map(|idx| if idx / n == idx % n { 1.0 / (n as f64).sqrt() } else { 0.0 }).collect();
    let lambda_certificate = b.tensor_square_apply(&squares, &vec_i).iter().zip(&vec_i).map(|(a, c)| a * c).sum();
    let dense = b.to_tuple();
    let mut rng = rng_from_seed(seed ^ 0x5A);
    let (mut square_identity_error, mut max_sampled_norm) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let v = random_unit_vector(&mut rng, d);
        let s = dense.combination(&v);
        square_identity_error = square_identity_error.max(s.square().sub(&HermMatrix::identity(n)).max_abs());
        max_sampled_norm = max_sampled_norm.max(herm_opnorm(&s)?);
    }
    let df = d as f64;
    let grid = [df - 1.0, df - 1e-6, df, df + 1e-6, df + 1.0];
    let margins = grid.iter().filter(|&&c| c > 0.0).map(|&c| (c, 1.0 - lambda_max / c)).collect();
    Ok(SharpnessReport {
        d,
        lambda_max,
        lambda_certificate,
        square_identity_error,
        max_sampled_norm,
        margins,
        anticommutation_violations: b.anticommutation_violations(),
    })
}

/// Boundary behaviour of `B/√d` for the self-dual ball `𝔇` and the matrix ball `𝔅`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqrtDReport {
    pub d: usize,
    /// `‖Σ (Bᵢ/√d) ⊗ conj(Bᵢ/√d)‖`, equal to 1 on the boundary of `𝔇`.
    pub selfdual_norm: f64,
    pub member_at_sqrt_d: bool,
    /// Membership of `B/c` for `c = √d·(1 − 10⁻³)`.
    pub member_below: bool,
    /// `min_eig(I − Σ (Bᵢ/√d)²)`, zero on the boundary of `𝔅`.
    pub ball_margin: f64,
}

/// `B/√d` lies on the boundary of `𝔇` (and of `𝔅`), while `B/c ∉ 𝔇` for `c < √d`.
pub fn sqrt_d_check(d: usize) -> Result<SqrtDReport> {
    if d == 0 || d > MAX_SHARPNESS_D {
        return Err(Error::TooLarge { what: "d (tensor size 4^(d-1))", value: d, max: MAX_SHARPNESS_D });
    }
    let b = clifford_tuple(d)?;
    let df = d as f64;
    let c_below = df.sqrt() * (1.0 - 1e-3);
    let dense = b.to_tuple();
    let (norm, member_at, member_below) = if d <= DENSE_SELFDUAL_D {
        let x = dense.scale(1.0 / df.sqrt());
        (selfdual_norm(&x)?, selfdual_member(&x, 1e-9)?, selfdual_member(&dense.scale(1.0 / c_below), 1e-9)?)
    } else {
        // B is real, so conj(Bᵢ) = Bᵢ and the norm is λ_max(ΣBᵢ⊗Bᵢ)/c² (the spectrum is symmetric in [−d, d]).
        let lam = power_lambda_max(&b, 0);
        (lam / df, lam / df <= 1.0 + 1e-9, lam / (c_below * c_below) <= 1.0 + 1e-9)
    };
    Ok(SqrtDReport {
        d,
        selfdual_norm: norm,
        member_at_sqrt_d: member_at,
        member_below,
        ball_margin: ball_margin(&dense.scale(1.0 / df.sqrt()))?,
    })
}

/// One grid point of [`nonscalable_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonscalablePoint {
    pub c: f64,
    /// Largest singular value of `cT − I`.
    pub norm_svd: f64,
    /// Largest root of `t² − 2ct − (1 − c)² = 0`.
    pub norm_root: f64,
}

/// `‖cT − I‖ > 1` for `T = [[1, 2], [0, 1]]` and every `c > 0` on the grid.
pub fn nonscalable_check(c_grid: &[f64]) -> Result<Vec<NonscalablePoint>> {
    let t = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
    c_grid
        .iter()
        .map(|&c| {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidInput(format!("grid values must be positive, got {c}")));
            }
            let m = &t.scale(c) - &CMatrix::identity(2);
            let norm_svd = singular_values(&m)?[0];
            let norm_root = c + (c * c + (1.0 - c) * (1.0 - c)).sqrt();
            Ok(NonscalablePoint { c, norm_svd, norm_root })
        })
        .collect()
}

/// Witnesses for the proper inclusions `Wmin(ball) ⊊ 𝔅 ⊊ 𝔅^•`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallChainReport {
    pub d: usize,
    /// `min_eig(I − ΣXⱼ²)` for `X = ([[1/2, 0], [0, 0]], [[0, 3/4], [3/4, 0]], 0, …)`; `X ∈ 𝔅`.
    pub x_ball_margin: f64,
    /// `min_eig(I − Σ Eⱼ⊗Xⱼ)` for the Clifford tuple `E`; negative, so `X ∉ Wmin(ball)`.
    pub x_clifford_pencil_margin: f64,
    /// Max entry of `ΣBⱼ² − I − (d−1)e₁e₁*` for the switch matrices `B`.
    pub switch_identity_error: f64,
    /// `min_eig(I − ΣBⱼ²) = −(d−1)`, so `B ∉ 𝔅`.
    pub switch_ball_margin: f64,
    /// Smallest `min_eig(I − Σ Yⱼ⊗Bⱼ)` over sampled `Y ∈ 𝔅`; nonnegative as `B ∈ 𝔅^•`.
    pub switch_dual_margin: f64,
    /// Largest `‖Σ Yⱼ⊗conj(Yⱼ)‖` over the sampled `Y ∈ 𝔅`; at most 1 as `𝔅 ⊆ 𝔇`.
    pub sampled_selfdual_norm: f64,
}

/// Computes the witness values for `d ≥ 2` from their raw constructions.
pub fn ball_chain_witnesses(d: usize, samples: usize, seed: u64) -> Result<BallChainReport> {
    if d < 2 {
        return Err(Error::InvalidInput("ball chain witnesses need d ≥ 2".into()));
    }
    if d > MAX_CLIFFORD_D {
        return Err(Error::TooLarge { what: "d", value: d, max: MAX_CLIFFORD_D });
    }
    let mut xs = vec![
        HermMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.0]])?,
        HermMatrix::from_real_rows(&[vec![0.0, 0.75], vec![0.75, 0.0]])?,
    ];
    xs.resize(d, HermMatrix::zeros(2));
    let x = HermTuple::new(xs)?;
    let e = clifford_tuple(d)?.to_tuple();
    let pencil = Pencil::SelfAdjoint(e);
    let x_clifford_pencil_margin = crate::sets::pencil_margin(&pencil, &x)?;
    debug_assert_eq!(pencil_member(&pencil, &x, 0.0)?, x_clifford_pencil_margin >= 0.0);

    let b = switch_matrices(d);
    let mut sq = HermMatrix::zeros(d + 1);
    for bj in b.iter() {
        sq = sq.add(&bj.square());
    }
    let mut expect = HermMatrix::identity(d + 1).as_cmatrix().clone();
    expect[(0, 0)] += Complex64::new(d as f64 - 1.0, 0.0);
    let switch_identity_error = (sq.as_cmatrix() - &expect).max_abs();

    let dual = Pencil::SelfAdjoint(b.clone());
    let mut rng = rng_from_seed(seed);
    let (mut switch_dual_margin, mut sampled_selfdual_norm) = (f64::INFINITY, 0.0f64);
    for _ in 0..samples {
        let y = random_ball_member(&mut rng, d, 2);
        // Σ Yⱼ⊗Bⱼ is unitarily similar to Σ Bⱼ⊗Yⱼ, the pencil evaluated at Y.
        switch_dual_margin = switch_dual_margin.min(crate::sets::pencil_margin(&dual, &y)?);
        sampled_selfdual_norm = sampled_selfdual_norm.max(selfdual_norm(&y)?);
    }
    Ok(BallChainReport {
        d,
        x_ball_margin: ball_margin(&x)?,
        x_clifford_pencil_margin,
        switch_identity_error,
        switch_ball_margin: ball_margin(&b)?,
        switch_dual_margin,
        sampled_selfdual_norm,
    })
}

/// Matrix convex sets covered by [`tau_rho_harness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HarnessSet {
    Cube,
    Diamond,
    Ball,
    Simplex,
}

impl std::str::FromStr for HarnessSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(HarnessSet::Cube),
            "diamond" => Ok(HarnessSet::Diamond),
            "ball" => Ok(HarnessSet::Ball),
            "simplex" => Ok(HarnessSet::Simplex),
            other => Err(Error::InvalidInput(format!("unknown set {other:?}; expected cube, diamond, ball or simplex"))),
        }
    }
}

/// Empirical bracket for the scale `t` with `t·Wmax(K) ⊆ Wmin(K)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub set: HarnessSet,
    pub d: usize,
    pub samples: usize,
    /// Tested scale `1/d`.
    pub scale: f64,
    /// Fraction of samples `X` with `X/d` reported Feasible.
    pub feasible_fraction: f64,
    /// `1/d` when every sample was Feasible.
    pub lower: Option<f64>,
    /// Bound certified by a Clifford witness, when one applies.
    pub upper: Option<f64>,
    /// Diamond only: fraction of unscaled samples found in `Wmin([−1, 1]ᵈ)`.
    pub cube_target_fraction: Option<f64>,
    pub note: String,
}

fn polytope_for(set: HarnessSet, d: usize) -> Result<Polytope> {
    match set {
        HarnessSet::Cube => Ok(cube(d)),
        HarnessSet::Diamond => Ok(diamond(d)),
        HarnessSet::Simplex if d == 3 => Ok(simplex3()),
        HarnessSet::Simplex => Err(Error::InvalidInput("the simplex harness uses the regular simplex in d = 3".into())),
        HarnessSet::Ball if d == 2 => Ok(regular_polygon(64)),
        HarnessSet::Ball => Ok(diamond(d)),
    }
}

/// Random members of `Wmax(P)` for a polytope with facets `(α, 1)`: a random Hermitian tuple scaled to
/// the boundary and then by a uniform factor in `[1/2, 1)`.
fn sample_wmax(p: &Polytope, n: usize, rng: &mut impl rand::Rng) -> Result<HermTuple> {
    let y = HermTuple::new((0..p.dim).map(|_| random_hermitian(rng, n)).collect())?;
    let (margin, _) = wmax_margin(&y, p)?;
    // wmax_margin(tY) = 1 − t·λ at the worst facet, so the boundary is t = 1/(1 − margin).
    let t = 1.0 / (1.0 - margin);
    let shrink = 0.5 + 0.5 * rng.random::<f64>();
    Ok(y.scale(t * shrink))
}

/// Samples `S`-members and tests whether their `(1/d)`-scalings are in `Wmin`.
///
/// The lower end is empirical evidence only; the upper end is a certificate from the Clifford
/// tuple. The bracket never asserts the exact value.
pub fn tau_rho_harness(set: HarnessSet, samples: usize, d: usize, seed: u64, params: DykstraParams) -> Result<HarnessReport> {
    if d == 0 || d > MAX_HARNESS_D {
        return Err(Error::TooLarge { what: "harness d", value: d, max: MAX_HARNESS_D });
    }
    let target = polytope_for(set, d)?;
    let mut rng = rng_from_seed(seed);
    let scale = 1.0 / d as f64;
    let mut feasible = 0;
    let mut in_cube = 0;
    for _ in 0..samples {
        let x = match set {
            HarnessSet::Ball => random_ball_member(&mut rng, d, 2),
            _ => sample_wmax(&target, 2, &mut rng)?,
        };
        if wmin_member(&x.scale(scale), &target, params)?.status == Status::Feasible {
            feasible += 1;
        }
        if set == HarnessSet::Diamond && wmin_member(&x, &cube(d), params)?.status == Status::Feasible {
            in_cube += 1;
        }
    }
    let frac = if samples == 0 { 0.0 } else { feasible as f64 / samples as f64 };
    let lambda = d as f64;
    let upper = match set {
        HarnessSet::Ball => Some(1.0 / lambda),
        HarnessSet::Cube | HarnessSet::Diamond => Some(1.0 / lambda.sqrt()),
        HarnessSet::Simplex => None,
    };
    let note = match set {
        HarnessSet::Ball => "samples from the matrix ball; Wmin tested against an inscribed polytope, which only under-reports".to_string(),
        _ => "samples scaled into Wmax by a uniform factor in [1/2, 1)".to_string(),
    };
    Ok(HarnessReport {
        set,
        d,
        samples,
        scale,
        feasible_fraction: frac,
        lower: (samples > 0 && feasible == samples).then_some(scale),
        upper,
        cube_target_fraction: (set == HarnessSet::Diamond && samples > 0).then(|| in_cube as f64 / samples as f64),
        note,
    })
}

/// Smallest `min_eig` of `I − C⁻¹ΣBᵢ⊗Bᵢ`; dense, for small d.
pub fn dense_tensor_margin(d: usize, c: f64) -> Result<f64> {
    let b = clifford_tuple(d)?.to_tuple();
    let mats = b.cmatrices();
    let k = crate::linalg::kron_sum(&mats, &mats);
    min_eig(&HermMatrix::identity(k.rows()).sub(&HermMatrix::symmetrize(&k).scale(1.0 / c)))
}

/// `X ∈ 𝔅` with a tolerance, re-exported for reports.
pub fn in_matrix_ball(x: &HermTuple) -> Result<bool> {
    ball_member(x, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_clifford_tuples() {
        let b1 = clifford_tuple(1).unwrap();
        assert_eq!(b1.to_tuple(), HermTuple::scalar(&[1.0]).unwrap());
        let b2 = clifford_tuple(2).unwrap().to_tuple();
        let sx = HermMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let sz = HermMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(b2.matrices(), &[sx, sz]);
        for d in 1..=MAX_CLIFFORD_D {
            let b = clifford_tuple(d).unwrap();
            assert_eq!(b.size(), 1 << (d - 1));
            assert_eq!(b.anticommutation_violations(), 0, "d = {d}");
        }
        assert!(clifford_tuple(0).is_err() && clifford_tuple(13).is_err());
    }

    #[test]
    fn sharpness_values() {
        for d in 1..=4 {
            let r = sharpness_check(d, 8, 1).unwrap();
            assert!((r.lambda_max - d as f64).abs() < 1e-9, "d = {d}: {}", r.lambda_max);
            assert!((r.lambda_certificate - d as f64).abs() < 1e-12);
            assert!(r.square_identity_error < 1e-12 && r.max_sampled_norm <= 1.0 + 1e-12);
            assert!((dense_tensor_margin(d, d as f64).unwrap()).abs() < 1e-9);
        }
        let r = sharpness_check(3, 4, 2).unwrap();
        let at = |c: f64| r.margins.iter().find(|(x, _)| *x == c).unwrap().1;
        assert!(at(3.0 - 1e-6) < 0.0 && at(3.0).abs() < 1e-9 && at(3.0 + 1e-6) > 0.0);
    }

    #[test]
    fn sqrt_d_boundary() {
        for d in 1..=4 {
            let r = sqrt_d_check(d).unwrap();
            assert!((r.selfdual_norm - 1.0).abs() < 1e-9);
            assert!(r.member_at_sqrt_d && !r.member_below);
            assert!(r.ball_margin.abs() < 1e-12);
        }
    }

    #[test]
    fn nonscalable_grid() {
        let pts = nonscalable_check(&[1e-3, 0.25, 0.5, 1.0, 2.0]).unwrap();
        for p in &pts {
            assert!((p.norm_svd - p.norm_root).abs() < 1e-9);
            assert!(p.norm_svd > 1.0);
        }
        assert!((pts[3].norm_svd - 2.0).abs() < 1e-12);
        assert!(nonscalable_check(&[0.0]).is_err());
    }

    #[test]
    fn ball_chain_values() {
        for d in 2..=3 {
            let r = ball_chain_witnesses(d, 16, 3).unwrap();
            assert!(r.x_ball_margin >= 0.0);
            assert!(r.x_clifford_pencil_margin < 0.0);
            assert_eq!(r.switch_identity_error, 0.0);
            assert!((r.switch_ball_margin + (d as f64 - 1.0)).abs() < 1e-12);
            assert!(r.switch_dual_margin >= -1e-12);
            assert!(r.sampled_selfdual_norm <= 1.0 + 1e-12);
        }
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default hermiticity tolerance for [`HermMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from real row-major rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_diag_real(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Complex64) -> CMatrix {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Complex64, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "axpy shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M − M*‖_max`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn real_part(&self) -> CMatrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        out.axpy(ONE, &adj);
        out.scale(0.5)
    }

    /// `(M − M*)/(2i)`, Hermitian.
    pub fn imag_part(&self) -> CMatrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        out.axpy(-ONE, &adj);
        out.scale_c(Complex64::new(0.0, -0.5))
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let out_row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * p..(k + 1) * p];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        CMatrix { rows: n, cols: p, data: out }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum()).collect()
    }

    /// `V* self V`.
    pub fn compress(&self, v: &CMatrix) -> CMatrix {
        v.adjoint().matmul(&self.matmul(v))
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Kronecker product; the left factor indexes the coarse blocks.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = CMatrix::zeros(r1 * r2, c1 * c2);
        let oc = c1 * c2;
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.data[i * c1 + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..r2 {
                    let row = (i * r2 + k) * oc + j * c2;
                    for l in 0..c2 {
                        out.data[row + l] = a * other.data[k * c2 + l];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> CMatrix {
        CMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn select_columns(&self, idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        self.axpy(ONE, rhs);
    }
}

impl SubAssign<&CMatrix> for CMatrix {
    fn sub_assign(&mut self, rhs: &CMatrix) {
        self.axpy(-ONE, rhs);
    }
}

/// A square complex matrix that is Hermitian up to tolerance; symmetrized on construction.
#[derive(Clone, PartialEq)]
pub struct HermMatrix(CMatrix);

impl HermMatrix {
    /// Checks hermiticity against [`HERMITIAN_TOL`] (scaled by the entry magnitude) and symmetrizes.
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tol(m, HERMITIAN_TOL)
    }

    pub fn with_tol(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!("Hermitian matrix must be square, got {}x{}", m.rows, m.cols)));
        }
        let dev = m.hermitian_deviation();
        if !dev.is_finite() || dev > tol * (1.0 + m.max_abs()) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(M + M*)/2` without any check.
    pub fn symmetrize(m: &CMatrix) -> Self {
        let mut out = m.real_part();
        let n = out.rows;
        for i in 0..n {
            out[(i, i)].im = 0.0;
        }
        HermMatrix(out)
    }

    pub fn zeros(n: usize) -> Self {
        HermMatrix(CMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        HermMatrix(CMatrix::identity(n))
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        HermMatrix(CMatrix::from_diag_real(diag))
    }

    /// Real symmetric input (upper triangle wins on disagreement).
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_cmatrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_cmatrix(self) -> CMatrix {
        self.0
    }

    pub fn scale(&self, s: f64) -> HermMatrix {
        HermMatrix(self.0.scale(s))
    }

    /// `V* M V`, again Hermitian.
    pub fn compress(&self, v: &CMatrix) -> HermMatrix {
        HermMatrix::symmetrize(&self.0.compress(v))
    }

    pub fn kron(&self, other: &HermMatrix) -> HermMatrix {
        HermMatrix(self.0.kron(&other.0))
    }

    pub fn add(&self, other: &HermMatrix) -> HermMatrix {
        HermMatrix(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &HermMatrix) -> HermMatrix {
        HermMatrix(&self.0 - &other.0)
    }

    /// `self + s·other` with real `s`.
    pub fn add_scaled(&self, s: f64, other: &HermMatrix) -> HermMatrix {
        let mut out = self.0.clone();
        out.axpy(Complex64::new(s, 0.0), &other.0);
        HermMatrix(out)
    }

    pub fn square(&self) -> HermMatrix {
        HermMatrix::symmetrize(&self.0.matmul(&self.0))
    }

    pub fn conj(&self) -> HermMatrix {
        HermMatrix(self.0.conj())
    }

    pub fn direct_sum(blocks: &[HermMatrix]) -> HermMatrix {
        let inner: Vec<CMatrix> = blocks.iter().map(|b| b.0.clone()).collect();
        HermMatrix(CMatrix::direct_sum(&inner))
    }
}

impl std::ops::Deref for HermMatrix {
    type Target = CMatrix;
    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

impl fmt::Debug for HermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Herm{:?}", self.0)
    }
}

impl From<HermMatrix> for CMatrix {
    fn from(h: HermMatrix) -> CMatrix {
        h.0
    }
}

/// Sum of Kronecker products `Σ a_i ⊗ b_i`.
pub fn kron_sum(a: &[CMatrix], b: &[CMatrix]) -> CMatrix {
    assert_eq!(a.len(), b.len());
    let mut it = a.iter().zip(b);
    let Some((a0, b0)) = it.next() else {
        return CMatrix::zeros(0, 0);
    };
    let mut acc = a0.kron(b0);
    for (x, y) in it {
        acc += &x.kron(y);
    }
    acc
}

//! JSON wire formats. Complex entries are `[re, im]` (a bare number reads as real); matrices
//! are row-major nested arrays; tuples are `{"d", "n", "matrices"}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilation::{DilatedTuple, Dilation, Povm, Residuals};
use crate::error::{Error, Result};
use crate::frames::{check_tight, Frame};
use crate::linalg::{CMatrix, HermMatrix};
use crate::sdp::{FeasibilityResult, Status};
use crate::tuple::{GenTuple, HermTuple};

/// One matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Complex([f64; 2]),
    Real(f64),
}

impl EntryJson {
    pub fn value(self) -> Complex64 {
        match self {
            EntryJson::Complex([re, im]) => Complex64::new(re, im),
            EntryJson::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

pub type MatrixJson = Vec<Vec<EntryJson>>;

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.rows()).map(|r| m.row(r).iter().map(|z| EntryJson::Complex([z.re, z.im])).collect()).collect()
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<CMatrix> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if let Some(r) = m.iter().position(|row| row.len() != cols) {
        return Err(Error::DimensionMismatch(format!("row {r} has {} entries, expected {cols}", m[r].len())));
    }
    CMatrix::from_vec(rows, cols, m.iter().flatten().map(|e| e.value()).collect())
}

/// `{"d": d, "n": n, "matrices": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub d: usize,
    pub n: usize,
    pub matrices: Vec<MatrixJson>,
}

impl TupleJson {
    pub fn from_herm(t: &HermTuple) -> Self {
        TupleJson { d: t.d(), n: t.n(), matrices: t.iter().map(|m| matrix_to_json(m.as_cmatrix())).collect() }
    }

    pub fn from_gen(t: &GenTuple) -> Self {
        TupleJson { d: t.d(), n: t.n(), matrices: t.matrices().iter().map(matrix_to_json).collect() }
    }

    fn cmatrices(&self) -> Result<Vec<CMatrix>> {
        if self.matrices.len() != self.d {
            return Err(Error::DimensionMismatch(format!("d = {} but {} matrices given", self.d, self.matrices.len())));
        }
        let mats = self.matrices.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
        if let Some(i) = mats.iter().position(|m| m.rows() != self.n || m.cols() != self.n) {
            return Err(Error::DimensionMismatch(format!("matrix {i} is {}x{}, expected n = {}", mats[i].rows(), mats[i].cols(), self.n)));
        }
        Ok(mats)
    }

    /// Validates Hermitian matrices at the default tolerance.
    pub fn to_herm(&self) -> Result<HermTuple> {
        HermTuple::new(self.cmatrices()?.into_iter().map(HermMatrix::new).collect::<Result<_>>()?)
    }

    pub fn to_gen(&self) -> Result<GenTuple> {
        GenTuple::new(self.cmatrices()?)
    }
}

/// `{"dim": d, "vectors": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl FrameJson {
    pub fn from_frame(f: &Frame) -> Self {
        FrameJson { dim: f.dim, vectors: f.vectors.clone() }
    }

    /// Validates tightness and the declared dimension.
    pub fn to_frame(&self) -> Result<Frame> {
        if let Some(i) = self.vectors.iter().position(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch(format!("vector {i} has {} coordinates, expected {}", self.vectors[i].len(), self.dim)));
        }
        check_tight(self.vectors.clone())
    }
}

/// `{"T": tuple, "V": matrix, "scale": c, "residuals": {...}, "normal": bool}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DilationJson {
    #[serde(rename = "T")]
    pub t: TupleJson,
    #[serde(rename = "V")]
    pub v: MatrixJson,
    pub scale: f64,
    pub residuals: Residuals,
    #[serde(default)]
    pub normal: bool,
}

impl DilationJson {
    pub fn from_dilation(d: &Dilation) -> Self {
        let (t, normal) = match &d.t {
            DilatedTuple::SelfAdjoint(t) => (TupleJson::from_herm(t), false),
            DilatedTuple::Normal(t) => (TupleJson::from_gen(t), true),
        };
        DilationJson { t, v: matrix_to_json(&d.v), scale: d.scale, residuals: d.residuals, normal }
    }

    /// Rebuilds the dilation and recomputes its residuals against `source`.
    pub fn to_dilation(&self, source: &GenTuple) -> Result<Dilation> {
        let t = if self.normal { DilatedTuple::Normal(self.t.to_gen()?) } else { DilatedTuple::SelfAdjoint(self.t.to_herm()?) };
        Dilation::new(t, matrix_from_json(&self.v)?, self.scale, source)
    }
}

/// `{"atoms": [[...]], "effects": [matrix, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmJson {
    pub atoms: Vec<Vec<f64>>,
    pub effects: Vec<MatrixJson>,
}

impl PovmJson {
    pub fn from_povm(p: &Povm) -> Self {
        PovmJson { atoms: p.atoms.clone(), effects: p.effects.iter().map(|e| matrix_to_json(e.as_cmatrix())).collect() }
    }

    pub fn to_povm(&self) -> Result<Povm> {
        let effects = self.effects.iter().map(|m| matrix_from_json(m).and_then(HermMatrix::new)).collect::<Result<_>>()?;
        Povm::new(self.atoms.clone(), effects)
    }
}

/// `{"status", "residual", "iterations", "choi"}`; `choi` holds the PSD witness blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityJson {
    pub status: Status,
    pub residual: f64,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi: Option<Vec<MatrixJson>>,
}

impl FeasibilityJson {
    pub fn from_result(r: &FeasibilityResult, with_witness: bool) -> Self {
        let choi = if with_witness {
            r.witness.as_ref().map(|w| w.iter().map(|m| matrix_to_json(m.as_cmatrix())).collect())
        } else {
            None
        };
        FeasibilityJson { status: r.status, residual: r.residual, iterations: r.iterations, choi }
    }
}

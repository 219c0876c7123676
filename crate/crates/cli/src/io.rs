//! Input loading and report output.

use std::fmt;
use std::path::{Path, PathBuf};

use matconvex::frames::{frame_by_name, Frame};
use matconvex::json::{FrameJson, TupleJson};
use matconvex::{GenTuple, HermTuple};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

/// Failures that end the run with an exit code above 2.
#[derive(Debug)]
pub enum CliError {
    Json { path: PathBuf, line: usize, column: usize, message: String },
    Io { path: PathBuf, message: String },
    Input(matconvex::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 4,
            _ => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Json { path, line, column, message } => json!({
                "error": {"kind": "malformed_json", "path": path, "line": line, "column": column, "message": message}
            }),
            CliError::Io { path, message } => json!({"error": {"kind": "io", "path": path, "message": message}}),
            CliError::Input(e) => json!({"error": {"kind": "invalid_input", "message": e.to_string()}}),
            CliError::Usage(m) => json!({"error": {"kind": "usage", "message": m}}),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Json { path, line, column, message } => {
                write!(f, "{}:{line}:{column}: malformed JSON: {message}", path.display())
            }
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<matconvex::Error> for CliError {
    fn from(e: matconvex::Error) -> Self {
        CliError::Input(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads and parses a JSON file, keeping the error position.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_herm(path: &Path) -> CliResult<HermTuple> {
    Ok(read_json::<TupleJson>(path)?.to_herm()?)
}

pub fn read_gen(path: &Path) -> CliResult<GenTuple> {
    Ok(read_json::<TupleJson>(path)?.to_gen()?)
}

/// A frame from a file or a named builder.
pub fn read_frame(path: Option<&Path>, builder: Option<&str>, d: usize) -> CliResult<Frame> {
    match (path, builder) {
        (Some(p), None) => Ok(read_json::<FrameJson>(p)?.to_frame()?),
        (None, Some(b)) => Ok(frame_by_name(b, d)?),
        _ => Err(CliError::Usage("give exactly one of FRAME or --builder".into())),
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Writes pretty JSON with a trailing newline to `out` or stdout.
pub fn emit(report: &Value, out: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(report).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io { path: p.to_path_buf(), message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

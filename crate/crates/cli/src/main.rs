//! `matconvex`: JSON-in, JSON-out frontend for the matconvex library.
//!
//! Exit codes: 0 positive, 1 negative, 2 undecided, 3 malformed input or I/O, 4 usage.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::io::{emit, CliError};

/// Environment variable setting the worker thread count.
pub const THREADS_ENV: &str = "MATCONVEX_THREADS";

#[derive(Parser, Debug)]
#[command(name = "matconvex", version, about = "Dilations, membership oracles and map-existence tests for matrix convex sets")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Iteration cap for alternating projections.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_iter: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit wall-clock timing so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Membership oracles.
    #[command(subcommand)]
    Member(MemberCmd),
    /// Commuting dilations.
    #[command(subcommand)]
    Dilate(DilateCmd),
    /// Map existence between tuples.
    #[command(subcommand)]
    Map(MapCmd),
    /// Free spectrahedron inclusion.
    #[command(subcommand)]
    Include(IncludeCmd),
    /// Tight frame analysis.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Extremal examples and certificates.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Polar duality.
    #[command(subcommand)]
    Dual(DualCmd),
}

#[derive(Subcommand, Debug)]
pub enum MemberCmd {
    /// X ∈ Wmax(P) by facet inequalities.
    Wmax { x: PathBuf, #[arg(long)] polytope: PathBuf },
    /// X ∈ Wmin(P) by a POVM feasibility search.
    Wmin { x: PathBuf, #[arg(long)] polytope: PathBuf },
    /// X in the matrix ball: ΣXⱼ² ≤ I.
    Ball { x: PathBuf },
    /// X in the self-dual ball: ‖ΣXⱼ⊗conj(Xⱼ)‖ ≤ 1.
    Dball { x: PathBuf },
    /// X in the matrix cube: every ‖Xⱼ‖ ≤ 1.
    Cube { x: PathBuf },
    /// X ∈ Wmax of the diamond: Σ εⱼXⱼ ≤ I for all signs.
    Diamond { x: PathBuf },
    /// X in the free spectrahedron of the pencil with coefficients A.
    Pencil { x: PathBuf, #[arg(long)] pencil: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum DilateCmd {
    /// Flip dilation of a contraction tuple; `--general` for non-self-adjoint input.
    Flip { x: PathBuf, #[arg(long)] general: bool },
    /// λ-dilation from a family file {"lambdas", "betas"}.
    Lambda { x: PathBuf, #[arg(long)] family: PathBuf },
    /// Frame dilation with weights (default all ones).
    Frame {
        x: PathBuf,
        #[arg(long, conflicts_with = "builder")]
        frame: Option<PathBuf>,
        #[arg(long)]
        builder: Option<String>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
    /// Dilation of X ∈ Wmax(diamond) to commuting contractions.
    Diamond { x: PathBuf },
    /// Dilation of a cube member with Σ εⱼTⱼ ≤ dI.
    #[command(name = "cube2diamond")]
    CubeToDiamond { x: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MapCmd {
    Ucp(MapArgs),
    Ccp(MapArgs),
    Cc(MapArgs),
    /// Normal tuples given by their joint spectra (lists of points).
    Normal {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Ucp)]
        kind: KindArg,
    },
}

#[derive(Args, Debug)]
pub struct MapArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Include the Choi matrix in the report.
    #[arg(long)]
    pub with_choi: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum KindArg {
    Ucp,
    Ccp,
    Cc,
}

#[derive(Subcommand, Debug)]
pub enum IncludeCmd {
    /// D_A ⊆ D_B, certified by a UCP map with Aⱼ ↦ Bⱼ.
    Spectra { a: PathBuf, b: PathBuf },
    /// Necessary test for [−1, 1]ᵈ ⊆ D_B(1).
    #[command(name = "relax-cube")]
    RelaxCube { b: PathBuf },
}

#[derive(Args, Debug)]
pub struct FrameSource {
    pub frame: Option<PathBuf>,
    #[arg(long, conflicts_with = "frame")]
    pub builder: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
}

#[derive(Subcommand, Debug)]
pub enum FrameCmd {
    Check(FrameSource),
    Sym {
        #[command(flatten)]
        src: FrameSource,
        #[arg(long, default_value_t = matconvex::frames::DEFAULT_SYMMETRY_CAP)]
        cap: usize,
    },
    Reflexive {
        #[command(flatten)]
        src: FrameSource,
        #[arg(long, default_value_t = matconvex::frames::DEFAULT_SYMMETRY_CAP)]
        cap: usize,
    },
    Invariance(FrameSource),
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    Clifford { #[arg(long)] d: usize },
    Sharpness { #[arg(long)] d: usize, #[arg(long, default_value_t = 16)] samples: usize },
    Sqrtd { #[arg(long)] d: usize },
    Nonscalable {
        #[arg(long, default_value_t = 0.01)]
        from: f64,
        #[arg(long, default_value_t = 3.0)]
        to: f64,
        #[arg(long, default_value_t = 300)]
        points: usize,
    },
    Chain { #[arg(long)] d: usize, #[arg(long, default_value_t = 32)] samples: usize },
    Taurho {
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum SetArg {
    Cube,
    Diamond,
    Ball,
    Simplex,
}

#[derive(Subcommand, Debug)]
pub enum DualCmd {
    Polytope { p: PathBuf },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(e.to_string()))
}

fn fail(e: &CliError, out: Option<&std::path::Path>) -> ExitCode {
    eprintln!("matconvex: {e}");
    let _ = emit(&e.to_json(), out);
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        return fail(&e, cli.common.out.as_deref());
    }
    let start = Instant::now();
    match commands::run(&cli.command, &cli.common) {
        Ok(outcome) => {
            let mut report = json!({
                "command": outcome.command,
                "verdict": outcome.verdict,
                "tolerances": {"tol": cli.common.tol, "max_iter": cli.common.max_iter},
                "seed": cli.common.seed,
                "residuals": outcome.residuals,
                "result": outcome.result,
            });
            if !cli.common.no_timing {
                report["timing"] = json!({"seconds": start.elapsed().as_secs_f64()});
            }
            if let Err(e) = emit(&report, cli.common.out.as_deref()) {
                return fail(&e, None);
            }
            ExitCode::from(outcome.verdict.exit_code())
        }
        Err(e) => fail(&e, cli.common.out.as_deref()),
    }
}

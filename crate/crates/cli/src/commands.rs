//! Subcommand handlers. Each returns a verdict, residuals and a result payload.

use std::path::Path;

use matconvex::dilation::{
    cube_to_diamond_dilation, diamond_dilation, flip_dilation, frame_dilation, lambda_dilation, nonsa_flip_dilation, Dilation,
    LambdaFamily,
};
use matconvex::frames::{is_vertex_reflexive, projection_invariance, symmetry_group};
use matconvex::json::{DilationJson, FeasibilityJson, TupleJson};
use matconvex::sdp::{DykstraParams, FeasibilityResult, Status};
use matconvex::sets::{
    ball_margin, cube_member, diamond_worst_sign, pencil_margin, polar_dual_polytope, selfdual_norm, wmax_margin, wmin_member,
    Pencil, Polytope,
};
use matconvex::ucp::{normal_ucp_exists, relax_cube, spectrahedron_inclusion, ChoiProblem, CubeRelaxation, MapKind};
use matconvex::witnesses::{
    ball_chain_witnesses, clifford_tuple, nonscalable_check, sharpness_check, sqrt_d_check, tau_rho_harness, HarnessSet,
};
use matconvex::{Error, GenTuple};
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{read_frame, read_gen, read_herm, read_json, to_value, CliResult};
use crate::{Command, Common, DilateCmd, DualCmd, FrameCmd, IncludeCmd, KindArg, MapCmd, MemberCmd, SetArg, WitnessCmd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Negative,
    Undecided,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Undecided => 2,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }

    fn from_status(s: Status) -> Self {
        match s {
            Status::Feasible => Verdict::Positive,
            Status::Infeasible => Verdict::Negative,
            Status::Undecided => Verdict::Undecided,
        }
    }
}

pub struct Outcome {
    pub command: String,
    pub verdict: Verdict,
    pub residuals: Value,
    pub result: Value,
}

fn outcome(command: &str, verdict: Verdict, residuals: Value, result: Value) -> CliResult<Outcome> {
    Ok(Outcome { command: command.to_string(), verdict, residuals, result })
}

fn params(c: &Common) -> DykstraParams {
    DykstraParams { max_iter: c.max_iter, tol_feas: c.tol, ..DykstraParams::default() }
}

fn margin_outcome(command: &str, margin: f64, tol: f64, result: Value) -> CliResult<Outcome> {
    outcome(command, Verdict::from_bool(margin >= -tol), json!({"margin": margin}), result)
}

fn feasibility_outcome(command: &str, r: &FeasibilityResult, with_witness: bool, extra: Value) -> CliResult<Outcome> {
    let mut result = to_value(&FeasibilityJson::from_result(r, with_witness));
    if let (Value::Object(m), Value::Object(e)) = (&mut result, extra) {
        m.extend(e);
    }
    outcome(command, Verdict::from_status(r.status), json!({"residual": r.residual, "iterations": r.iterations}), result)
}

/// Precondition failures of a dilation are definite negatives; other errors are input errors.
fn dilation_outcome(command: &str, r: matconvex::Result<Dilation>) -> CliResult<Outcome> {
    match r {
        Ok(d) => outcome(command, Verdict::Positive, to_value(&d.residuals), to_value(&DilationJson::from_dilation(&d))),
        Err(e @ (Error::Precondition(_) | Error::NotContraction { .. })) => {
            outcome(command, Verdict::Negative, json!({}), json!({"reason": e.to_string()}))
        }
        Err(e) => Err(e.into()),
    }
}

fn read_polytope(p: &Path) -> CliResult<Polytope> {
    let poly: Polytope = read_json(p)?;
    poly.validate()?;
    Ok(poly)
}

pub fn run(cmd: &Command, c: &Common) -> CliResult<Outcome> {
    match cmd {
        Command::Member(m) => member(m, c),
        Command::Dilate(m) => dilate(m),
        Command::Map(m) => map(m, c),
        Command::Include(m) => include(m, c),
        Command::Frame(m) => frame(m, c),
        Command::Witness(m) => witness(m, c),
        Command::Dual(DualCmd::Polytope { p }) => {
            let dual = polar_dual_polytope(&read_polytope(p)?)?;
            outcome("dual polytope", Verdict::Positive, json!({}), to_value(&dual))
        }
    }
}

fn member(m: &MemberCmd, c: &Common) -> CliResult<Outcome> {
    match m {
        MemberCmd::Wmax { x, polytope } => {
            let (margin, facet) = wmax_margin(&read_herm(x)?, &read_polytope(polytope)?)?;
            margin_outcome("member wmax", margin, c.tol, json!({"worst_facet": facet}))
        }
        MemberCmd::Wmin { x, polytope } => {
            let r = wmin_member(&read_herm(x)?, &read_polytope(polytope)?, params(c))?;
            feasibility_outcome("member wmin", &r, false, json!({}))
        }
        MemberCmd::Ball { x } => margin_outcome("member ball", ball_margin(&read_herm(x)?)?, c.tol, json!({})),
        MemberCmd::Dball { x } => {
            let norm = selfdual_norm(&read_herm(x)?)?;
            outcome("member dball", Verdict::from_bool(norm <= 1.0 + c.tol), json!({"norm": norm}), json!({}))
        }
        MemberCmd::Cube { x } => {
            let x = read_herm(x)?;
            let norms = x.norms()?;
            outcome("member cube", Verdict::from_bool(cube_member(&x, c.tol)?), json!({"norms": norms}), json!({}))
        }
        MemberCmd::Diamond { x } => {
            let (eps, margin) = diamond_worst_sign(&read_herm(x)?)?;
            margin_outcome("member diamond", margin, c.tol, json!({"worst_sign": eps}))
        }
        MemberCmd::Pencil { x, pencil } => {
            let a: TupleJson = read_json(pencil)?;
            let a = match a.to_herm() {
                Ok(h) => Pencil::SelfAdjoint(h),
                Err(_) => Pencil::General(a.to_gen()?),
            };
            let x: TupleJson = read_json(x)?;
            let margin = match x.to_herm() {
                Ok(h) => pencil_margin(&a, &h)?,
                Err(_) => pencil_margin(&a, &x.to_gen()?)?,
            };
            margin_outcome("member pencil", margin, c.tol, json!({}))
        }
    }
}

fn dilate(m: &DilateCmd) -> CliResult<Outcome> {
    match m {
        DilateCmd::Flip { x, general: false } => dilation_outcome("dilate flip", flip_dilation(&read_herm(x)?)),
        DilateCmd::Flip { x, general: true } => dilation_outcome("dilate flip", nonsa_flip_dilation(&read_gen(x)?)),
        DilateCmd::Lambda { x, family } => {
            let raw: LambdaFamily = read_json(family)?;
            let fam = LambdaFamily::new(raw.lambdas, raw.betas)?;
            dilation_outcome("dilate lambda", lambda_dilation(&read_herm(x)?, &fam))
        }
        DilateCmd::Frame { x, frame, builder, d, weights } => {
            let f = read_frame(frame.as_deref(), builder.as_deref(), *d)?;
            let w = weights.clone().unwrap_or_else(|| vec![1.0; f.len()]);
            dilation_outcome("dilate frame", frame_dilation(&read_herm(x)?, &f.vectors, &w))
        }
        DilateCmd::Diamond { x } => dilation_outcome("dilate diamond", diamond_dilation(&read_herm(x)?)),
        DilateCmd::CubeToDiamond { x } => dilation_outcome("dilate cube2diamond", cube_to_diamond_dilation(&read_herm(x)?)),
    }
}

fn map(m: &MapCmd, c: &Common) -> CliResult<Outcome> {
    let (name, args, kind) = match m {
        MapCmd::Ucp(a) => ("map ucp", a, MapKind::Ucp),
        MapCmd::Ccp(a) => ("map ccp", a, MapKind::Ccp),
        MapCmd::Cc(a) => ("map cc", a, MapKind::Cc),
        MapCmd::Normal { a, b, kind } => {
            let kind = match kind {
                KindArg::Ucp => MapKind::Ucp,
                KindArg::Ccp => MapKind::Ccp,
                KindArg::Cc => MapKind::Cc,
            };
            let (pa, pb): (Vec<Vec<f64>>, Vec<Vec<f64>>) = (read_json(a)?, read_json(b)?);
            let ok = normal_ucp_exists(&pa, &pb, kind, c.tol)?;
            return outcome("map normal", Verdict::from_bool(ok), json!({}), json!({"kind": kind}));
        }
    };
    let (a, b): (GenTuple, GenTuple) = (read_gen(&args.a)?, read_gen(&args.b)?);
    let prob = ChoiProblem::new(&a, &b, kind)?;
    let r = prob.solve(params(c))?;
    let check = match r.witness.as_ref().and_then(|w| w.first()) {
        Some(choi) if r.is_feasible() => {
            let (min_eig, err) = prob.verify(choi)?;
            json!({"choi_min_eig": min_eig, "constraint_error": err})
        }
        _ => json!({}),
    };
    let mut out = feasibility_outcome(name, &r, args.with_choi, json!({"kind": kind}))?;
    if let (Value::Object(m), Value::Object(e)) = (&mut out.residuals, check) {
        m.extend(e);
    }
    Ok(out)
}

fn include(m: &IncludeCmd, c: &Common) -> CliResult<Outcome> {
    match m {
        IncludeCmd::Spectra { a, b } => {
            let out = spectrahedron_inclusion(&read_herm(a)?, &read_herm(b)?)?;
            let extra = json!({
                "interior": out.interior.interior,
                "interior_margin": out.interior.margin,
                "note": out.note,
            });
            feasibility_outcome("include spectra", &out.result, false, extra)
        }
        IncludeCmd::RelaxCube { b } => {
            let (verdict, r) = relax_cube(&read_herm(b)?, params(c))?;
            let v = if verdict == CubeRelaxation::CubeExcluded { Verdict::Positive } else { Verdict::Undecided };
            let result = json!({"verdict": verdict, "status": r.status});
            outcome("include relax-cube", v, json!({"residual": r.residual, "iterations": r.iterations}), result)
        }
    }
}

fn frame(m: &FrameCmd, c: &Common) -> CliResult<Outcome> {
    let src = match m {
        FrameCmd::Check(s) | FrameCmd::Invariance(s) => s,
        FrameCmd::Sym { src, .. } | FrameCmd::Reflexive { src, .. } => src,
    };
    let f = match read_frame(src.frame.as_deref(), src.builder.as_deref(), src.d) {
        Err(crate::io::CliError::Input(e @ (Error::NotTight { .. } | Error::NotEqualNorm { .. }))) if matches!(m, FrameCmd::Check(_)) => {
            return outcome("frame check", Verdict::Negative, json!({}), json!({"reason": e.to_string()}));
        }
        r => r?,
    };
    match m {
        FrameCmd::Check(_) => {
            let result = json!({"dim": f.dim, "len": f.len(), "norm": f.norm, "sigma": f.sigma, "vectors": f.vectors});
            outcome("frame check", Verdict::Positive, json!({"barycenter": f.barycenter_norm()}), result)
        }
        FrameCmd::Sym { cap, .. } => {
            let g = symmetry_group(&f, *cap)?;
            let result = json!({"order": g.order(), "transitive": g.is_transitive(), "closed": g.is_closed(), "perms": g.perms});
            outcome("frame sym", Verdict::Positive, json!({}), result)
        }
        FrameCmd::Reflexive { cap, .. } => {
            let g = symmetry_group(&f, *cap)?;
            let r = is_vertex_reflexive(&f, &g)?;
            outcome("frame reflexive", Verdict::from_bool(r.reflexive), json!({}), to_value(&r))
        }
        FrameCmd::Invariance(_) => {
            let ok = projection_invariance(&f, c.tol)?;
            outcome("frame invariance", Verdict::from_bool(ok), json!({}), json!({}))
        }
    }
}

fn witness(m: &WitnessCmd, c: &Common) -> CliResult<Outcome> {
    match m {
        WitnessCmd::Clifford { d } => {
            let b = clifford_tuple(*d)?;
            let violations = b.anticommutation_violations();
            let t = b.to_tuple();
            let result = json!({"tuple": TupleJson::from_herm(&t), "anticommutation_violations": violations});
            outcome("witness clifford", Verdict::from_bool(violations == 0), json!({}), result)
        }
        WitnessCmd::Sharpness { d, samples } => {
            let r = sharpness_check(*d, *samples, c.seed)?;
            let ok = (r.lambda_max - *d as f64).abs() <= c.tol.max(1e-9) && r.anticommutation_violations == 0;
            let res = json!({"lambda_error": (r.lambda_max - *d as f64).abs(), "square_identity_error": r.square_identity_error});
            outcome("witness sharpness", Verdict::from_bool(ok), res, to_value(&r))
        }
        WitnessCmd::Sqrtd { d } => {
            let r = sqrt_d_check(*d)?;
            let ok = (r.selfdual_norm - 1.0).abs() <= c.tol.max(1e-9) && r.member_at_sqrt_d && !r.member_below;
            outcome("witness sqrtd", Verdict::from_bool(ok), json!({"norm_error": (r.selfdual_norm - 1.0).abs()}), to_value(&r))
        }
        WitnessCmd::Nonscalable { from, to, points } => {
            if *points < 2 || from.partial_cmp(to) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidInput("need at least two points on an increasing interval".into()).into());
            }
            let grid: Vec<f64> = (0..*points).map(|i| from + (to - from) * i as f64 / (*points - 1) as f64).collect();
            let pts = nonscalable_check(&grid)?;
            let gap = pts.iter().map(|p| (p.norm_svd - p.norm_root).abs()).fold(0.0, f64::max);
            let min = pts.iter().map(|p| p.norm_svd).fold(f64::INFINITY, f64::min);
            let res = json!({"root_svd_gap": gap, "min_norm": min});
            outcome("witness nonscalable", Verdict::from_bool(min > 1.0 + c.tol), res, to_value(&pts))
        }
        WitnessCmd::Chain { d, samples } => {
            let r = ball_chain_witnesses(*d, *samples, c.seed)?;
            let ok = r.x_ball_margin >= -c.tol
                && r.x_clifford_pencil_margin < -c.tol
                && r.switch_ball_margin < -c.tol
                && r.switch_dual_margin >= -c.tol
                && r.sampled_selfdual_norm <= 1.0 + c.tol;
            outcome("witness chain", Verdict::from_bool(ok), json!({"switch_identity_error": r.switch_identity_error}), to_value(&r))
        }
        WitnessCmd::Taurho { set, d, samples } => {
            let set = match set {
                SetArg::Cube => HarnessSet::Cube,
                SetArg::Diamond => HarnessSet::Diamond,
                SetArg::Ball => HarnessSet::Ball,
                SetArg::Simplex => HarnessSet::Simplex,
            };
            let r = tau_rho_harness(set, *samples, *d, c.seed, params(c))?;
            let v = if r.lower.is_some() { Verdict::Positive } else { Verdict::Undecided };
            outcome("witness taurho", v, json!({"feasible_fraction": r.feasible_fraction}), to_value(&r))
        }
    }
}

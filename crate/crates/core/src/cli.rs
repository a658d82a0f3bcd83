//! The `afix` command line.
//!
//! Exit codes: 0 success (including recorded alternating-group mismatches),
//! 1 malformed input, 2 bound, guard or path errors, 3 a symmetric or
//! elementary abelian closed form disagrees with the solver, 4 an internal
//! inconsistency (solver and oracle disagree, or a computed generator fails
//! the series check).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::continuation::sweep;
use crate::analytic::{
    continue_along_path, lambda_at, log_lambda_series, minus_one_defined, psi_eval, residues, ComplexClassFunction,
    PathSpec,
};
use crate::closedforms::{
    a_an_closed_with, a_elementary_abelian_with, a_sn_closed_with, verify_closed_forms, ClosedFormReport, Theorem,
    Verdict, VerifyPlan,
};
use crate::error::Error;
use crate::fixpoints::structure::is_prime;
use crate::fixpoints::{brute_force_fixed_points, is_fixed_point, solve_fixed_points};
use crate::groups::{FiniteGroupModel, GroupData, DEFAULT_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "afix",
    version,
    about = "Fixed points of the Adams-type map Psi_t on class functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute A(G) for one group.
    Agroup(AgroupArgs),
    /// Compare closed forms against the solver (and the oracle) over ranges.
    Verify(VerifyArgs),
    /// Evaluate, continue and classify Lambda_{-t}(f) and Psi_t(f).
    Analytic(AnalyticArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Numerical tolerance, in (0, 1e-2].
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Truncation order of the fixed-point series check.
    #[arg(long, global = true, default_value_t = 30)]
    pub order: usize,
    /// Node cap for the exhaustive oracle (accepts 1e7).
    #[arg(long, global = true, default_value = "1e7", value_parser = parse_guard)]
    pub guard: u128,
    /// Cap on the group order for element-level work.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u128,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct AgroupArgs {
    /// Inline JSON, a file holding JSON, or sym:n, alt:n, abelian:a,b,..,
    /// cyclic:m, dihedral:m, quaternion.
    #[arg(long)]
    pub group: String,
    /// Report the closed form (symmetric, alternating or elementary abelian).
    #[arg(long)]
    pub closed: bool,
    /// Also run the exhaustive oracle and fail if it disagrees.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Symmetric degrees, e.g. 2..5 (inclusive).
    #[arg(long, value_parser = parse_range)]
    pub sym: Option<RangeInclusive<u32>>,
    /// Alternating degrees, e.g. 3..6 (inclusive).
    #[arg(long, value_parser = parse_range)]
    pub alt: Option<RangeInclusive<u32>>,
    /// Elementary abelian p-groups as p:m1..m2.
    #[arg(long, value_parser = parse_abelian)]
    pub abelian: Option<(u64, RangeInclusive<u32>)>,
    /// Skip the exhaustive oracle.
    #[arg(long)]
    pub no_oracle: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct AnalyticArgs {
    #[command(subcommand)]
    pub op: AnalyticOp,
    /// Group spec as for agroup; defaults to the trivial group.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Class function: JSON map class id -> number or [re, im], or const1.
    #[arg(long = "fn", global = true, default_value = "const1")]
    pub function: String,
    /// Restrict to one class id.
    #[arg(long, global = true)]
    pub class: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum AnalyticOp {
    /// Lambda_{-t}(f) at one point.
    Eval {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
    },
    /// Psi_t(f) at one point.
    Psi {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
    },
    /// Residues of the log-derivative at the roots of unity.
    Residues,
    /// Continue along a polygonal path "re,im re,im ...".
    Continue {
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        /// Minimum distance kept from singular points.
        #[arg(long)]
        clearance: Option<f64>,
    },
    /// Lambda and Psi on a list of points "re,im re,im ...".
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Whether Lambda is finite at t = -1.
    MinusOne,
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. }
            | Error::GuardExceeded { .. }
            | Error::InvalidPath(_)
            | Error::OutsideDisk(_)
            | Error::HurwitzDomain { .. }
            | Error::Quadrature(_) => EXIT_BOUND,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_guard(s: &str) -> std::result::Result<u128, String> {
    let v: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if !(v >= 1.0 && v.is_finite() && v.fract() == 0.0) {
        return Err(format!("guard must be a positive integer, got {s}"));
    }
    Ok(v as u128)
}

/// `a..b`, both ends inclusive.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn parse_abelian(s: &str) -> std::result::Result<(u64, RangeInclusive<u32>), String> {
    let (p, r) = s
        .split_once(':')
        .ok_or_else(|| format!("expected p:m1..m2, got {s:?}"))?;
    let p: u64 = p.trim().parse().map_err(|e| format!("{p:?}: {e}"))?;
    Ok((p, parse_range(r)?))
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("non-finite point {s}"));
    }
    Ok(z)
}

/// Group from inline JSON, a shorthand, or a JSON file.
pub fn parse_group(spec: &str) -> CliResult<FiniteGroupModel> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return serde_json::from_str(spec).map_err(|e| Failure::input(format!("group JSON: {e}")));
    }
    let num = |v: &str| {
        v.trim()
            .parse::<u64>()
            .map_err(|e| Failure::input(format!("group spec {spec:?}: {e}")))
    };
    let degree = |v: &str| -> CliResult<u32> {
        u32::try_from(num(v)?).map_err(|_| Failure::input(format!("degree too large in {spec:?}")))
    };
    if spec == "quaternion" {
        return Ok(FiniteGroupModel::quaternion());
    }
    if let Some((kind, arg)) = spec.split_once(':') {
        return match kind {
            "sym" | "symmetric" => Ok(FiniteGroupModel::Symmetric { n: degree(arg)? }),
            "alt" | "alternating" => Ok(FiniteGroupModel::Alternating { n: degree(arg)? }),
            "abelian" => Ok(FiniteGroupModel::Abelian {
                factors: arg.split(',').map(num).collect::<CliResult<_>>()?,
            }),
            "cyclic" => Ok(FiniteGroupModel::cyclic(num(arg)?)),
            "dihedral" => Ok(FiniteGroupModel::dihedral(num(arg)?)),
            _ => Err(Failure::input(format!("unknown group kind {kind:?}"))),
        };
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::input(format!("cannot read {spec}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{spec}: {e}")))
}

fn parse_function(spec: &str, l: usize) -> CliResult<ComplexClassFunction> {
    match spec.trim() {
        "const1" => Ok(ComplexClassFunction::constant(l, Complex64::new(1.0, 0.0))),
        text => Ok(ComplexClassFunction::from_json(text, l)?),
    }
}

fn parse_points(text: &str) -> CliResult<Vec<Complex64>> {
    let pts = text
        .split_whitespace()
        .map(parse_complex)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    if pts.is_empty() {
        return Err(Failure::input("no points given"));
    }
    Ok(pts)
}

fn check_common(c: &Common) -> CliResult<()> {
    if !(c.tol > 0.0 && c.tol <= 1e-2) {
        return Err(Failure::input(format!("--tol must lie in (0, 1e-2], got {}", c.tol)));
    }
    if c.order == 0 {
        return Err(Failure::input("--order must be positive"));
    }
    if c.bound == 0 {
        return Err(Failure::input("--bound must be positive"));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(common: &Common, body: &str) -> CliResult<()> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn fmt_list(v: &[u64]) -> String {
    let inner: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(" "))
}

fn report_exit(r: &ClosedFormReport) -> i32 {
    if r.inconsistent() {
        EXIT_INCONSISTENT
    } else if r.theorem != Theorem::T4 && (!r.is_match() || !r.recipes_valid()) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn reports_csv(reports: &[ClosedFormReport]) -> String {
    let mut out = String::from("theorem,group,predicted,observed,oracle,verdict\n");
    for r in reports {
        let group = serde_json::to_string(&r.group)
            .expect("model serializes")
            .replace('"', "\"\"");
        let verdict = match &r.verdict {
            Verdict::NotRun => "not_run",
            Verdict::Match => "match",
            Verdict::Mismatch { .. } => "mismatch",
        };
        let oracle = r.oracle.as_deref().map_or_else(|| "-".to_string(), fmt_list);
        let _ = writeln!(
            out,
            "{:?},\"{group}\",{},{},{oracle},{verdict}",
            r.theorem,
            fmt_list(&r.predicted),
            fmt_list(&r.observed)
        );
    }
    out
}

fn closed_form(model: &FiniteGroupModel, guard: Option<u128>) -> CliResult<ClosedFormReport> {
    match model {
        FiniteGroupModel::Symmetric { n } => Ok(a_sn_closed_with(*n, guard)?),
        FiniteGroupModel::Alternating { n } => Ok(a_an_closed_with(*n, guard)?),
        FiniteGroupModel::Abelian { factors }
            if !factors.is_empty() && factors.iter().all(|&f| f == factors[0]) && is_prime(factors[0]) =>
        {
            let m = u32::try_from(factors.len()).map_err(|_| Failure::input("rank too large"))?;
            Ok(a_elementary_abelian_with(factors[0], m, guard)?)
        }
        _ => Err(Failure::input(
            "no closed form for this group (symmetric, alternating or elementary abelian only)",
        )),
    }
}

fn cmd_agroup(args: &AgroupArgs) -> CliResult<i32> {
    check_common(&args.common)?;
    let model = parse_group(&args.group)?;
    let g = GroupData::with_bound(model, args.common.bound)?;
    if args.closed {
        let guard = args.oracle.then_some(args.common.guard);
        let r = closed_form(g.model(), guard)?;
        let body = match args.common.format {
            Format::Json => to_json(&r),
            Format::Csv => reports_csv(std::slice::from_ref(&r)),
        };
        emit(&args.common, &body)?;
        return Ok(report_exit(&r));
    }
    let a = solve_fixed_points(&g);
    let mut code = EXIT_OK;
    if a.generators
        .iter()
        .any(|f| !is_fixed_point(&g, f, args.common.order, args.common.tol))
    {
        eprintln!("a computed generator fails the series fixed-point check");
        code = EXIT_INCONSISTENT;
    }
    if args.oracle {
        let o = brute_force_fixed_points(&g, args.common.guard)?;
        if o.invariant_factors != a.invariant_factors {
            eprintln!(
                "solver {} and oracle {} disagree",
                fmt_list(&a.invariant_factors),
                fmt_list(&o.invariant_factors)
            );
            code = EXIT_INCONSISTENT;
        }
    }
    let body = match args.common.format {
        Format::Json => to_json(&a),
        Format::Csv => {
            let mut out = String::from("generator,order,class_id,exponent,modulus\n");
            for (i, f) in a.generators.iter().enumerate() {
                for (j, e) in f.exps.iter().enumerate() {
                    let _ = writeln!(out, "{i},{},{j},{e},{}", a.invariant_factors[i], f.modulus);
                }
            }
            out
        }
    };
    emit(&args.common, &body)?;
    Ok(code)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<i32> {
    check_common(&args.common)?;
    let mut plan = VerifyPlan {
        sym: args.sym.clone(),
        alt: args.alt.clone(),
        abelian: args.abelian.clone(),
        guard: (!args.no_oracle).then_some(args.common.guard),
    };
    if plan.sym.is_none() && plan.alt.is_none() && plan.abelian.is_none() {
        plan.sym = Some(2..=7);
        plan.alt = Some(3..=6);
        plan.abelian = Some((2, 1..=3));
    }
    if let Some((p, _)) = &plan.abelian {
        if !is_prime(*p) {
            return Err(Error::NotPrime(*p).into());
        }
    }
    let summary = verify_closed_forms(&plan);
    for s in &summary.skipped {
        eprintln!("skipped {s}");
    }
    if plan.guard.is_some() {
        for r in summary.reports.iter().filter(|r| r.oracle.is_none()) {
            eprintln!("oracle skipped for {:?}: guard exceeded", r.group);
        }
    }
    let body = match args.common.format {
        Format::Json => to_json(&summary),
        Format::Csv => reports_csv(&summary.reports),
    };
    emit(&args.common, &body)?;
    let code = summary.reports.iter().map(report_exit).max().unwrap_or(EXIT_OK);
    debug_assert_eq!(code != EXIT_OK, summary.fatal);
    Ok(code)
}

#[derive(Serialize)]
struct PointValue {
    class_id: usize,
    t: [f64; 2],
    value: [f64; 2],
}

#[derive(Serialize)]
struct ContinuationResult {
    class_id: usize,
    start: [f64; 2],
    end: [f64; 2],
    log_value: [f64; 2],
    value: [f64; 2],
    /// `value / Lambda(start)` for a closed path.
    monodromy: Option<[f64; 2]>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn cmd_analytic(args: &AnalyticArgs) -> CliResult<i32> {
    let common = &args.common;
    check_common(common)?;
    let model = match &args.group {
        Some(spec) => parse_group(spec)?,
        None => FiniteGroupModel::Symmetric { n: 1 },
    };
    let g = GroupData::with_bound(model, common.bound)?;
    let f = parse_function(&args.function, g.class_count())?;
    f.check_group(&g)?;
    let classes: Vec<usize> = match args.class {
        Some(j) if j < g.class_count() => vec![j],
        Some(j) => {
            return Err(Failure::input(format!(
                "class id {j} out of range 0..{}",
                g.class_count()
            )))
        }
        None => (0..g.class_count()).collect(),
    };
    let tol = common.tol;

    let point_rows = |t: Complex64, psi: bool| -> CliResult<Vec<PointValue>> {
        classes
            .iter()
            .map(|&j| {
                let value = if psi {
                    match psi_eval(&g, &f, j, t, tol) {
                        Err(Error::PsiAtZero { limit }) => limit,
                        other => other?,
                    }
                } else {
                    lambda_at(&g, &f, j, t, tol)?
                };
                Ok(PointValue {
                    class_id: j,
                    t: pair(t),
                    value: pair(value),
                })
            })
            .collect()
    };
    let points_csv = |rows: &[PointValue]| {
        let mut out = String::from("t_re,t_im,class_id,re,im\n");
        for r in rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.t[0], r.t[1], r.class_id, r.value[0], r.value[1]
            );
        }
        out
    };

    let body = match &args.op {
        AnalyticOp::Eval { t } | AnalyticOp::Psi { t } => {
            let rows = point_rows(*t, matches!(args.op, AnalyticOp::Psi { .. }))?;
            match common.format {
                Format::Json => to_json(&rows),
                Format::Csv => points_csv(&rows),
            }
        }
        AnalyticOp::Residues => {
            let reports = classes
                .iter()
                .map(|&j| residues(&g, &f, j))
                .collect::<crate::Result<Vec<_>>>()?;
            match common.format {
                Format::Json => to_json(&reports),
                Format::Csv => {
                    let mut out = String::from("class_id,p,root_re,root_im,residue_re,residue_im,classification\n");
                    for rep in &reports {
                        for e in &rep.entries {
                            let kind = serde_json::to_value(e.classification).expect("serializes");
                            let _ = writeln!(
                                out,
                                "{},{},{},{},{},{},{}",
                                rep.class_id,
                                e.p,
                                e.root[0],
                                e.root[1],
                                e.residue[0],
                                e.residue[1],
                                kind["kind"].as_str().unwrap_or("")
                            );
                        }
                    }
                    out
                }
            }
        }
        AnalyticOp::Continue { path, clearance } => {
            let mut spec = PathSpec::parse(path)?;
            if let Some(c) = clearance {
                spec = spec.with_clearance(*c);
            }
            let (Some(&start), Some(&end)) = (spec.waypoints.first(), spec.waypoints.last()) else {
                return Err(Error::InvalidPath("no waypoints".into()).into());
            };
            let closed = spec.waypoints.len() > 1 && start == end;
            let mut rows = Vec::with_capacity(classes.len());
            for &j in &classes {
                let c = continue_along_path(&g, &f, j, &spec, tol)?;
                let monodromy = if closed {
                    let base = log_lambda_series(&g, &f, j, start, tol)?;
                    Some(pair((c.log_value - base).exp()))
                } else {
                    None
                };
                rows.push(ContinuationResult {
                    class_id: j,
                    start: pair(start),
                    end: pair(end),
                    log_value: pair(c.log_value),
                    value: pair(c.value),
                    monodromy,
                });
            }
            match common.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("class_id,value_re,value_im,log_re,log_im,monodromy_re,monodromy_im\n");
                    for r in &rows {
                        let (mr, mi) = r
                            .monodromy
                            .map_or((String::new(), String::new()), |m| (m[0].to_string(), m[1].to_string()));
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{mr},{mi}",
                            r.class_id, r.value[0], r.value[1], r.log_value[0], r.log_value[1]
                        );
                    }
                    out
                }
            }
        }
        AnalyticOp::Sweep { t } => {
            let ts = parse_points(t)?;
            let rows: Vec<_> = sweep(&g, &f, &ts, tol)?
                .into_iter()
                .filter(|r| classes.contains(&r.class_id))
                .collect();
            match common.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut out = String::from("t_re,t_im,class_id,lambda_re,lambda_im,psi_re,psi_im\n");
                    for r in &rows {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{},{}",
                            r.t[0], r.t[1], r.class_id, r.lambda[0], r.lambda[1], r.psi[0], r.psi[1]
                        );
                    }
                    out
                }
            }
        }
        AnalyticOp::MinusOne => {
            let res = minus_one_defined(&g, &f)?;
            match common.format {
                Format::Json => to_json(&res),
                Format::Csv => {
                    let v = serde_json::to_value(&res).expect("serializes");
                    format!("result\n{}\n", v["result"].as_str().unwrap_or(""))
                }
            }
        }
    };
    emit(common, &body)?;
    Ok(EXIT_OK)
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Agroup(a) => cmd_agroup(a),
        Command::Verify(v) => cmd_verify(v),
        Command::Analytic(a) => cmd_analytic(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

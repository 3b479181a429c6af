//! Command-line front end. Every command is a thin adapter over a library call.
//!
//! Exit codes: `0` success, `2` domain error, `3` numerical failure, `64` usage
//! error. stdout carries only data; diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exp_solver::{
    alpha_complex_case, alpha_real_case, verify_fixed_point, BranchPairing, CaseTag,
    ExpLinearEquation, FixedPointReport, UnitInput,
};
use crate::lambert_w::{lambert_w, lambert_w_real, w_derivative, w_series};
use crate::quadratic_fields::{
    class_number, class_number_analytic, class_number_narrow, describe_field, fundamental_unit,
    roots_of_unity, unit_rank,
};
use crate::survey::{correspondence_table, scan_imaginary, scan_real, ScanOptions, FLAT_COLUMNS};
use crate::ComplexValue;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 64;

/// Must agree with the `--tolerance` default string.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MIN_TOLERANCE: f64 = 1e-15;
pub const MAX_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    #[value(name = "conjugate")]
    ConjugateBranch,
    #[value(name = "same")]
    SameBranch,
}

impl From<PairingArg> for BranchPairing {
    fn from(p: PairingArg) -> Self {
        match p {
            PairingArg::ConjugateBranch => BranchPairing::ConjugateBranch,
            PairingArg::SameBranch => BranchPairing::SameBranch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Complex,
    Real,
}

#[derive(Debug, Parser)]
#[command(
    name = "lgw",
    version,
    about = "Multi-branch Lambert W, exp-linear fixed points and quadratic-field class numbers"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Residual tolerance used for pass/fail flags, in [1e-15, 1e-6].
    #[arg(
        long,
        allow_hyphen_values = true,
        global = true,
        default_value = "1e-10"
    )]
    pub tolerance: f64,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct BranchArgs {
    /// Lambert W branch index (principal branch = 0).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub branch: i64,
    /// Branch of log ε, added as 2π·i·log_branch.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub log_branch: i64,
    /// Branch of the second split root in the real case.
    #[arg(long, value_enum, default_value_t = PairingArg::ConjugateBranch)]
    pub pairing: PairingArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate W_k(z), its derivative, or its Taylor series.
    W(WArgs),
    /// Solve z = A + B·exp(C·z) on a branch.
    Solve(SolveArgs),
    /// Fixed-point root α for a unit ε.
    Alpha(AlphaArgs),
    /// Field data and fundamental unit (or roots of unity) for Q(√d).
    Unit(UnitArgs),
    /// Class number of a quadratic field.
    Classno(ClassnoArgs),
    /// Class numbers over a range of discriminants with α attached to h = 1 fields.
    Scan(ScanArgs),
    /// Residual of the defining equation at a given α.
    Verify(VerifyArgs),
    /// One line per (field, unit, branch) for the h = 1 fields of a scan.
    Table(ScanArgs),
}

#[derive(Debug, Args)]
pub struct WArgs {
    /// Lambert W branch index (principal branch = 0).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub branch: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub im: f64,
    /// Real-valued evaluation (branches 0 and -1 only).
    #[arg(long, conflicts_with_all = ["derivative", "series"])]
    pub real: bool,
    /// Evaluate dW/dz instead of W.
    #[arg(long, conflicts_with = "series")]
    pub derivative: bool,
    /// Evaluate the principal-branch Taylor series with this many terms.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub branch: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub a_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub a_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub b_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c_im: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("unit_value").required(true).args(["eps_re", "regulator"])))]
pub struct AlphaArgs {
    #[command(flatten)]
    pub branches: BranchArgs,
    /// Real part of ε.
    #[arg(long, allow_hyphen_values = true)]
    pub eps_re: Option<f64>,
    /// Imaginary part of ε.
    #[arg(
        long,
        allow_hyphen_values = true,
        default_value_t = 0.0,
        requires = "eps_re"
    )]
    pub eps_im: f64,
    /// log ε of a real unit, for units beyond the float range.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eps_re")]
    pub regulator: Option<f64>,
    /// Equation family.
    #[arg(long = "case", value_enum, default_value_t = CaseArg::Complex)]
    pub case: CaseArg,
    /// Shift used in the complex case; the root does not depend on it.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("field").required(true).args(["d", "discriminant", "degree"])))]
pub struct UnitArgs {
    /// Squarefree radicand d.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Fundamental discriminant D.
    #[arg(long, allow_hyphen_values = true)]
    pub discriminant: Option<i64>,
    /// Degree 2r of a Galois field; prints its signature and unit rank.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// With --degree: the field is totally real (default: totally imaginary).
    #[arg(long, requires = "degree")]
    pub totally_real: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("field").required(true).args(["d", "discriminant"])))]
pub struct ClassnoArgs {
    /// Squarefree radicand d.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Fundamental discriminant D.
    #[arg(long, allow_hyphen_values = true)]
    pub discriminant: Option<i64>,
    /// Also report the narrow class number.
    #[arg(long)]
    pub narrow: bool,
    /// Also report the class number from the character sum.
    #[arg(long)]
    pub analytic: bool,
    /// Cap on the number of character-sum terms.
    #[arg(long, requires = "analytic")]
    pub precision_terms: Option<usize>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("sign").required(true).args(["imaginary", "real"])))]
pub struct ScanArgs {
    #[command(flatten)]
    pub branches: BranchArgs,
    /// Scan D in [-limit, -3].
    #[arg(long)]
    pub imaginary: bool,
    /// Scan D in [5, limit].
    #[arg(long)]
    pub real: bool,
    #[arg(long)]
    pub limit: u64,
    /// Worker threads.
    #[arg(long, env = "LGW_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Attach α for ε, ε², …, ε^N in real fields.
    #[arg(long, default_value_t = 1)]
    pub powers: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub branches: BranchArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub alpha_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub eps_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub eps_im: f64,
    #[arg(long = "case", value_enum, default_value_t = CaseArg::Complex)]
    pub case: CaseArg,
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Domain(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(std::io::Error::other(e))
    }
}

/// Parse `argv` (including the program name) and execute the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&config, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn conventions(cfg: &CliConfig, branch: i64, log_branch: i64, pairing: PairingArg) -> Value {
    json!({
        "branch": branch,
        "log_branch": log_branch,
        "pairing": BranchPairing::from(pairing),
        "tolerance": cfg.tolerance,
    })
}

fn default_conventions(cfg: &CliConfig) -> Value {
    conventions(cfg, 0, 0, PairingArg::ConjugateBranch)
}

fn complex_json(z: ComplexValue) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Write a single result object in the requested format.
fn emit(
    out: &mut dyn Write,
    format: OutputFormat,
    value: &Value,
) -> std::result::Result<(), Failure> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, value).map_err(std::io::Error::other)?;
            writeln!(out)?;
        }
        OutputFormat::Plain => {
            if let Value::Object(map) = value {
                for (key, v) in map {
                    writeln!(out, "{key}: {}", plain_scalar(v))?;
                }
            } else {
                writeln!(out, "{}", plain_scalar(value))?;
            }
        }
        OutputFormat::Csv => {
            let empty = Map::new();
            let map = value.as_object().unwrap_or(&empty);
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(map.keys())?;
            w.write_record(map.values().map(plain_scalar))?;
            w.flush()?;
        }
    }
    Ok(())
}

fn plain_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn with_conventions<T: Serialize>(
    payload: &T,
    conventions: Value,
) -> std::result::Result<Value, Failure> {
    let mut value = serde_json::to_value(payload).map_err(std::io::Error::other)?;
    if let Value::Object(map) = &mut value {
        map.insert("conventions".into(), conventions);
    }
    Ok(value)
}

/// Complex case: the defining residual. Real case: both split residuals.
fn report_within(r: &FixedPointReport, tol: f64) -> bool {
    match r.case {
        CaseTag::ComplexCase => r.residual_defining <= tol,
        CaseTag::RealCase => [r.residual_split_1, r.residual_split_2]
            .iter()
            .all(|x| x.is_some_and(|v| v <= tol)),
    }
}

fn report_json(r: &FixedPointReport, tol: f64) -> Value {
    let mut v = json!({
        "alpha_re": r.alpha.re,
        "alpha_im": r.alpha.im,
        "branch": r.branch.0,
        "beta": r.beta,
        "case": r.case,
        "log_eps_re": r.log_epsilon.re,
        "log_eps_im": r.log_epsilon.im,
        "residual_defining": r.residual_defining,
        "residual_split_1": r.residual_split_1,
        "residual_split_2": r.residual_split_2,
        "residual_sum_equation": r.residual_sum_equation,
        "within_tolerance": report_within(r, tol),
    });
    if let Some((a1, a2)) = r.split_roots {
        v["split_roots"] = json!([complex_json(a1), complex_json(a2)]);
    }
    v
}

fn field_discriminant(d: Option<i64>, disc: Option<i64>) -> Result<i64> {
    match (d, disc) {
        (Some(d), _) => describe_field(d).map(|f| f.discriminant),
        (None, Some(disc)) => Ok(disc),
        (None, None) => Err(Error::InvalidForm("no field given")),
    }
}

fn execute(cfg: &CliConfig, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&cfg.tolerance) {
        return Err(Failure::Usage(format!(
            "--tolerance {} is outside [{MIN_TOLERANCE:e}, {MAX_TOLERANCE:e}]",
            cfg.tolerance
        )));
    }
    let tol = cfg.tolerance;
    match &cfg.command {
        Command::W(a) => {
            let z = ComplexValue::new(a.re, a.im);
            let conv = conventions(cfg, a.branch, 0, PairingArg::ConjugateBranch);
            let value = if let Some(n) = a.series {
                let s = w_series(z, n)?;
                json!({ "quantity": "series", "terms": n, "re": s.re, "im": s.im, "conventions": conv })
            } else if a.derivative {
                let dw = w_derivative(a.branch, z)?;
                json!({ "quantity": "derivative", "re": dw.re, "im": dw.im, "conventions": conv })
            } else if a.real {
                let w = lambert_w_real(a.branch, a.re)?;
                let res = crate::lambert_w::residual(ComplexValue::new(w, 0.0), z);
                json!({ "quantity": "w", "re": w, "im": 0.0, "residual": res, "conventions": conv })
            } else {
                let ev = lambert_w(a.branch, z)?;
                json!({
                    "quantity": "w",
                    "re": ev.value.re,
                    "im": ev.value.im,
                    "residual": ev.residual,
                    "iterations": ev.iterations,
                    "conventions": conv,
                })
            };
            emit(out, cfg.format, &value)
        }
        Command::Solve(a) => {
            let eq = ExpLinearEquation::new(
                ComplexValue::new(a.a_re, a.a_im),
                ComplexValue::new(a.b_re, a.b_im),
                ComplexValue::new(a.c_re, a.c_im),
            )?;
            let z = eq.solve(a.branch)?;
            let res = eq.residual(z);
            let value = json!({
                "re": z.re,
                "im": z.im,
                "residual": res,
                "within_tolerance": res <= tol,
                "conventions": conventions(cfg, a.branch, 0, PairingArg::ConjugateBranch),
            });
            emit(out, cfg.format, &value)
        }
        Command::Alpha(a) => {
            let b = a.branches;
            let u = match (a.case, a.regulator, a.eps_re) {
                (CaseArg::Real, Some(l), _) => UnitInput::real_from_log(l)?,
                (CaseArg::Real, None, Some(re)) => {
                    if a.eps_im != 0.0 {
                        return Err(Error::InvalidUnit("real case needs a real unit").into());
                    }
                    UnitInput::real(re)?
                }
                (CaseArg::Complex, None, Some(re)) => {
                    UnitInput::complex(ComplexValue::new(re, a.eps_im), b.log_branch)?
                }
                (CaseArg::Complex, Some(_), _) => {
                    return Err(Failure::Usage("--regulator requires --case real".into()))
                }
                (_, None, None) => return Err(Failure::Usage("no unit given".into())),
            };
            if u.case() == CaseTag::RealCase && b.log_branch != 0 {
                return Err(Error::InvalidUnit("real case uses the real logarithm").into());
            }
            let report = match u.case() {
                CaseTag::ComplexCase => alpha_complex_case(&u, b.branch, a.beta)?,
                CaseTag::RealCase => alpha_real_case(&u, b.branch, b.pairing.into())?,
            };
            let mut value = report_json(&report, tol);
            value["conventions"] = conventions(cfg, b.branch, b.log_branch, b.pairing);
            emit(out, cfg.format, &value)
        }
        Command::Verify(a) => {
            let b = a.branches;
            let eps = ComplexValue::new(a.eps_re, a.eps_im);
            let u = match a.case {
                CaseArg::Complex => UnitInput::complex(eps, b.log_branch)?,
                CaseArg::Real => UnitInput::new(eps, b.log_branch, CaseTag::RealCase)?,
            };
            let res = verify_fixed_point(ComplexValue::new(a.alpha_re, a.alpha_im), &u);
            let value = json!({
                "residual": res,
                "within_tolerance": res <= tol,
                "case": u.case(),
                "conventions": conventions(cfg, b.branch, b.log_branch, b.pairing),
            });
            emit(out, cfg.format, &value)
        }
        Command::Unit(a) => {
            let value = if let Some(two_r) = a.degree {
                let (s1, s2, rank) = unit_rank(two_r, a.totally_real)?;
                json!({
                    "degree": two_r,
                    "totally_real": a.totally_real,
                    "sigma1": s1,
                    "sigma2": s2,
                    "unit_rank": rank,
                    "conventions": default_conventions(cfg),
                })
            } else {
                let d = match (a.d, a.discriminant) {
                    (Some(d), _) => d,
                    (None, Some(disc)) => {
                        crate::quadratic_fields::check_discriminant(disc)?;
                        crate::quadratic_fields::radicand(disc)
                    }
                    (None, None) => return Err(Failure::Usage("no field given".into())),
                };
                let field = describe_field(d)?;
                let mut v = with_conventions(&field, default_conventions(cfg))?;
                if d < 0 {
                    let roots = roots_of_unity(field.discriminant)?;
                    v["roots_of_unity"] = json!({ "n": roots.n, "elements": roots.labels() });
                } else {
                    let u = fundamental_unit(d)?;
                    v["unit"] = serde_json::to_value(&u).map_err(std::io::Error::other)?;
                    v["unit_text"] = json!(u.to_string());
                }
                v
            };
            emit(out, cfg.format, &value)
        }
        Command::Classno(a) => {
            let disc = field_discriminant(a.d, a.discriminant)?;
            let h = class_number(disc)?;
            let mut value = json!({ "D": disc, "h": h });
            if a.d.is_some() {
                value["d"] = json!(a.d);
            }
            if a.narrow {
                let narrow = if disc > 0 {
                    class_number_narrow(disc)?
                } else {
                    h
                };
                value["h_narrow"] = json!(narrow);
            }
            if a.analytic {
                value["h_analytic"] = json!(class_number_analytic(disc, a.precision_terms)?);
            }
            value["conventions"] = default_conventions(cfg);
            emit(out, cfg.format, &value)
        }
        Command::Scan(a) => {
            let summary = run_scan(a)?;
            let b = a.branches;
            match cfg.format {
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    let records = summary.flat_records();
                    if records.is_empty() {
                        w.write_record(FLAT_COLUMNS)?;
                    }
                    for r in records {
                        w.serialize(r)?;
                    }
                    w.flush()?;
                    Ok(())
                }
                _ => {
                    let value = with_conventions(
                        &summary.view(),
                        conventions(cfg, b.branch, b.log_branch, b.pairing),
                    )?;
                    emit_document(out, cfg.format, &value)
                }
            }
        }
        Command::Table(a) => {
            let summary = run_scan(a)?;
            let table = correspondence_table(&summary.rows);
            let b = a.branches;
            match cfg.format {
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    if table.lines.is_empty() {
                        w.write_record(TABLE_COLUMNS)?;
                    }
                    for line in &table.lines {
                        w.serialize(line)?;
                    }
                    w.flush()?;
                    Ok(())
                }
                _ => {
                    let value = with_conventions(
                        &table,
                        conventions(cfg, b.branch, b.log_branch, b.pairing),
                    )?;
                    emit_document(out, cfg.format, &value)
                }
            }
        }
    }
}

const TABLE_COLUMNS: [&str; 16] = [
    "D",
    "d",
    "unit",
    "epsilon_re",
    "epsilon_im",
    "log_eps_re",
    "log_eps_im",
    "alpha_re",
    "alpha_im",
    "residual_defining",
    "residual_split_1",
    "residual_split_2",
    "residual_sum_equation",
    "branch",
    "log_branch",
    "nearest_alpha",
];

/// Nested documents print as pretty JSON under `plain`.
fn emit_document(
    out: &mut dyn Write,
    format: OutputFormat,
    value: &Value,
) -> std::result::Result<(), Failure> {
    if format == OutputFormat::Plain {
        serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::other)?;
        writeln!(out)?;
        Ok(())
    } else {
        emit(out, OutputFormat::Json, value)
    }
}

fn run_scan(a: &ScanArgs) -> Result<crate::survey::SurveySummary> {
    let b = a.branches;
    let opts = ScanOptions {
        branch: b.branch,
        log_branch: b.log_branch,
        pairing: b.pairing.into(),
        real_unit_powers: a.powers,
        jobs: a.jobs,
    };
    if a.imaginary {
        scan_imaginary(a.limit, &opts)
    } else {
        scan_real(a.limit, &opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lgw").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn omega() {
        let (code, out, _) = call(&["w", "--branch", "0", "--re", "1", "--im", "0"]);
        assert_eq!(code, 0);
        assert!(out.ends_with('\n'));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["re"].as_f64().unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert_eq!(v["im"].as_f64(), Some(0.0));
        assert!(v["residual"].as_f64().unwrap() <= 1e-12);
        assert_eq!(v["conventions"]["tolerance"].as_f64(), Some(1e-10));
    }

    #[test]
    fn heegner_163() {
        let (code, out, _) = call(&["classno", "--discriminant", "-163"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["D"], json!(-163));
        assert_eq!(v["h"], json!(1));
    }

    #[test]
    fn empty_real_scan_csv() {
        let (code, out, _) = call(&["scan", "--real", "--limit", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, format!("{}\n", FLAT_COLUMNS.join(",")));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["classno", "--d", "12"]).0, 2);
        assert_eq!(
            call(&["solve", "--a-re", "1", "--b-re", "0", "--c-re", "1"]).0,
            2
        );
        assert_eq!(call(&["classno", "--d", "5", "--discriminant", "5"]).0, 64);
        assert_eq!(call(&["frobnicate"]).0, 64);
        assert_eq!(call(&["w", "--re", "1", "--tolerance", "1e-3"]).0, 64);
        let (code, _, err) = call(&[
            "classno",
            "--discriminant",
            "-23",
            "--analytic",
            "--precision-terms",
            "5",
        ]);
        assert_eq!(code, 3);
        assert!(err.contains("error"));
    }

    #[test]
    fn help_shows_defaults() {
        let (code, out, err) = call(&["scan", "--help"]);
        assert_eq!(code, 0);
        assert!(err.is_empty());
        assert!(out.contains("[default: 0]"));
        assert!(out.contains("[default: conjugate]"));
        let (_, out, _) = call(&["--help"]);
        assert!(out.contains("[default: 1e-10]"));
        assert_eq!("1e-10".parse::<f64>().unwrap(), DEFAULT_TOLERANCE);
    }

    #[test]
    fn scientific_notation() {
        let (code, out, _) = call(&["w", "--re", "-2.5e-1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let w = v["re"].as_f64().unwrap();
        assert!((w * w.exp() + 0.25).abs() < 1e-15);
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage / parse / I/O error, 2 invalid state,
//! 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classical::QIndex;
use crate::criteria::{
    alpha_entropic_criterion, entropic_criterion, geometric_grid, ppt_test, threshold_at,
    werner_conditional_closed_form, werner_state, with_markers, WernerParam, BELL_THRESHOLD, PPT_THRESHOLD,
    RENYI2_THRESHOLD,
};
use crate::error::Error;
use crate::matcore::Subsystem;
use crate::quantum::{quantum_conditional_tsallis, quantum_pseudoadditivity_residual, quantum_tsallis, DensityMatrix};
use crate::statefile::{read_state, StateFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_STATE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Header of the threshold-curve CSV.
pub const CURVE_HEADER: &str = "q,x_star,s_at_one_third";

#[derive(Parser, Debug)]
#[command(
    name = "tsallis-sep",
    version,
    about = "Tsallis conditional entropy and entropic separability criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropies of a state read from a JSON state file.
    Entropy(EntropyArgs),
    /// Criteria report for the two-qubit Werner state.
    Werner(WernerArgs),
    /// Threshold curve x*(q) of the Werner family as CSV.
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
struct EntropyArgs {
    /// Path to the state file.
    state: PathBuf,
    /// Entropic index; "1" selects the exact von Neumann branch.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct WernerArgs {
    /// Singlet weight x in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    q_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    q_max: f64,
    /// Number of geometrically spaced grid points.
    #[arg(long)]
    points: usize,
    /// Destination CSV file.
    #[arg(long, short)]
    output: PathBuf,
    /// Also evaluate q = 1 and q = 2 when they fall inside the range.
    #[arg(long)]
    markers: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidQ(_) | Error::InvalidAlpha(_) | Error::OutOfRange(_) => EXIT_USAGE,
            Error::NotDensityMatrix(_)
            | Error::NotBipartite(..)
            | Error::NotNormalized(_)
            | Error::InvalidMatrix(_)
            | Error::DimensionMismatch(_)
            | Error::NotHermitian(_)
            | Error::NotSquare { .. }
            | Error::InvalidDistribution(_) => EXIT_INVALID_STATE,
            Error::NoConvergence { .. } | Error::DegenerateDenominator(_) | Error::RootBracketFailure { .. } => {
                EXIT_NUMERICAL
            }
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<StateFileError> for Failure {
    fn from(e: StateFileError) -> Self {
        let code = match e {
            StateFileError::InvalidState(_) => EXIT_INVALID_STATE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Rounds to 15 significant digits.
pub fn round_sig15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().expect("formatted float parses")
}

/// 15 significant digits, printed in shortest round-trip form, locale-free.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig15(v);
    if r == 0.0 {
        return "0".into();
    }
    if (1e-6..1e16).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn parse_q(raw: &str) -> Result<QIndex, Failure> {
    let q: f64 = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("invalid value for --q: {raw:?} is not a number")))?;
    Ok(QIndex::new(q)?)
}

fn rounded<T: Serialize>(value: &T) -> serde_json::Value {
    fn walk(v: serde_json::Value) -> serde_json::Value {
        use serde_json::Value;
        match v {
            Value::Number(n) if n.is_f64() => {
                let r = round_sig15(n.as_f64().expect("f64"));
                serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
            }
            Value::Array(a) => Value::Array(a.into_iter().map(walk).collect()),
            Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, walk(v))).collect()),
            other => other,
        }
    }
    walk(serde_json::to_value(value).expect("serializable report"))
}

/// Entropies reported by `entropy`.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub q: f64,
    pub exact_limit: bool,
    pub s_ab: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub s_b_given_a: f64,
    pub s_a_given_b: f64,
    pub pseudoadditivity_residual: f64,
}

pub fn entropy_report(rho: &DensityMatrix, q: &QIndex) -> crate::error::Result<EntropyReport> {
    Ok(EntropyReport {
        q: q.value(),
        exact_limit: q.is_limit_one(),
        s_ab: quantum_tsallis(rho, q),
        s_a: quantum_tsallis(&rho.reduced(Subsystem::A)?, q),
        s_b: quantum_tsallis(&rho.reduced(Subsystem::B)?, q),
        s_b_given_a: quantum_conditional_tsallis(rho, Subsystem::A, q)?,
        s_a_given_b: quantum_conditional_tsallis(rho, Subsystem::B, q)?,
        pseudoadditivity_residual: quantum_pseudoadditivity_residual(rho, q)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PublishedThresholds {
    pub bell: f64,
    pub renyi2: f64,
    pub ppt: f64,
}

/// Everything reported by `werner`.
#[derive(Debug, Clone, Serialize)]
pub struct WernerReport {
    pub x: f64,
    pub q: f64,
    pub closed_form: f64,
    pub pipeline: f64,
    pub difference: f64,
    pub entropic_separable_hint: bool,
    pub renyi2_hint: bool,
    pub ppt_verdict: bool,
    pub ppt_min_eigenvalue: f64,
    pub thresholds: PublishedThresholds,
}

pub fn werner_report(x: WernerParam, q: &QIndex) -> crate::error::Result<WernerReport> {
    let rho = werner_state(x)?;
    let closed_form = werner_conditional_closed_form(x, q);
    let entropic = entropic_criterion(&rho, q)?;
    let ppt = ppt_test(&rho)?;
    Ok(WernerReport {
        x: x.value(),
        q: q.value(),
        closed_form,
        pipeline: entropic.s_cond_ba,
        difference: closed_form - entropic.s_cond_ba,
        entropic_separable_hint: entropic.separable_hint,
        renyi2_hint: alpha_entropic_criterion(&rho, 2.0)?,
        ppt_verdict: ppt.separable,
        ppt_min_eigenvalue: ppt.min_eigenvalue,
        thresholds: PublishedThresholds {
            bell: BELL_THRESHOLD,
            renyi2: RENYI2_THRESHOLD,
            ppt: PPT_THRESHOLD,
        },
    })
}

/// Renders the threshold curve for `grid` as CSV.
///
/// Rows whose root is not bracketed carry `NaN` in `x_star`; the second value
/// is `false` when that happened.
pub fn curve_csv(grid: &[f64]) -> crate::error::Result<(String, bool)> {
    let third = WernerParam::new(1.0 / 3.0)?;
    let mut out = String::from(CURVE_HEADER);
    out.push('\n');
    let mut ok = true;
    for &q in grid {
        let qi = QIndex::new(q)?;
        let x_star = match threshold_at(&qi) {
            Ok(x) => x,
            Err(Error::RootBracketFailure { .. }) => {
                ok = false;
                f64::NAN
            }
            Err(e) => return Err(e),
        };
        let s_third = werner_conditional_closed_form(third, &qi);
        out.push_str(&format!(
            "{},{},{}\n",
            format_number(q),
            format_number(x_star),
            format_number(s_third)
        ));
    }
    Ok((out, ok))
}

fn yes_no(separable: bool) -> &'static str {
    if separable {
        "separable-consistent"
    } else {
        "entangled"
    }
}

fn cmd_entropy(args: &EntropyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let q = parse_q(&args.q)?;
    let rho = read_state(&args.state)?;
    let r = entropy_report(&rho, &q)?;
    if args.json {
        writeln!(out, "{}", rounded(&r)).map_err(io_failure)?;
    } else {
        let f = format_number;
        let text = format!(
            "q = {}{}\nS_q(A,B) = {}\nS_q(A) = {}\nS_q(B) = {}\nS_q(B|A) = {}\nS_q(A|B) = {}\npseudoadditivity residual = {}\n",
            f(r.q),
            if r.exact_limit { " (von Neumann branch)" } else { "" },
            f(r.s_ab),
            f(r.s_a),
            f(r.s_b),
            f(r.s_b_given_a),
            f(r.s_a_given_b),
            f(r.pseudoadditivity_residual),
        );
        out.write_all(text.as_bytes()).map_err(io_failure)?;
    }
    Ok(())
}

fn cmd_werner(args: &WernerArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let q = parse_q(&args.q)?;
    let x = WernerParam::new(args.x)?;
    let r = werner_report(x, &q)?;
    if args.json {
        writeln!(out, "{}", rounded(&r)).map_err(io_failure)?;
    } else {
        let f = format_number;
        let text = format!(
            "x = {}\nq = {}\nS_q(B|A) closed form = {}\nS_q(B|A) matrix pipeline = {}\ndifference = {}\n\
             entropic criterion: {}\nRenyi alpha=2 criterion: {}\nPPT criterion: {} (min eigenvalue {})\n\
             published thresholds: a) Bell x < {}, b) Renyi-2 x < {}, c) PPT x < {}\n",
            f(r.x),
            f(r.q),
            f(r.closed_form),
            f(r.pipeline),
            f(r.difference),
            yes_no(r.entropic_separable_hint),
            yes_no(r.renyi2_hint),
            yes_no(r.ppt_verdict),
            f(r.ppt_min_eigenvalue),
            f(r.thresholds.bell),
            f(r.thresholds.renyi2),
            f(r.thresholds.ppt),
        );
        out.write_all(text.as_bytes()).map_err(io_failure)?;
    }
    Ok(())
}

fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut grid = geometric_grid(args.q_min, args.q_max, args.points)?;
    if args.markers {
        grid = with_markers(grid, &[1.0, 2.0]);
    }
    let (csv, ok) = curve_csv(&grid)?;
    std::fs::write(&args.output, csv)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", args.output.display())))?;
    writeln!(out, "wrote {} rows to {}", grid.len(), args.output.display()).map_err(io_failure)?;
    if !ok {
        return Err(Failure {
            code: EXIT_NUMERICAL,
            message: "root not bracketed for some q; those rows carry NaN".into(),
        });
    }
    Ok(())
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::usage(format!("output error: {e}"))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Entropy(a) => cmd_entropy(a, out),
        Command::Werner(a) => cmd_werner(a, out),
        Command::Curve(a) => cmd_curve(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

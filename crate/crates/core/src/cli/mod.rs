//! The `jetflow` command line.
//!
//! Every subcommand reads a map file (see [`parse`]) and prints one JSON
//! document, or canonical text with `--pretty`. Maps are parsed one degree
//! above `--degree` so that results involving a derivative are still exact
//! at `--degree`; everything printed is truncated to `--degree`.
//!
//! Exit codes: 0 success, 1 an identity failed, 2 usage or input error.

pub mod parse;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coeff::{int, parse_rational, rational_to_string, Coeff, Rational};
use crate::deformation::deform;
use crate::error::JetError;
use crate::generator::{infer_generator_log, infer_generator_recursive};
use crate::inversion::{invert_exp, invert_iterates, invert_solve};
use crate::jacobian::{jacobian_det_direct, jacobian_det_exp, jacobian_matrix_direct, jacobian_matrix_exp, keller_check};
use crate::matrix::{ConstantMatrix, SeriesMatrix};
use crate::series::{format_with_names, MapTuple};
use crate::structure::{bcw_case, liouville_check_exact, liouville_check_numeric, parity_check, LiouvilleMode};
use crate::suite::{selftest, verify_map};

pub use parse::{parse_map, MapFile, ParseError};

pub const DEFAULT_DEGREE: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "jetflow", version, about = "Exponential formulas for formal maps tangent to the identity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct MapArgs {
    /// Map file: a `vars:` line, then `F1 = ...`, `F2 = ...`.
    #[arg(long)]
    map: PathBuf,
    /// Truncation degree of the results.
    #[arg(long, default_value_t = DEFAULT_DEGREE, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    /// Canonical text instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum InferMethod {
    Recursive,
    Log,
    Both,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum InvertMethod {
    Exp,
    Iterates,
    Solve,
    All,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum JacobianMethod {
    Direct,
    Exp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator a(z) with F = exp(a d/dz) z.
    Infer {
        #[command(flatten)]
        args: MapArgs,
        #[arg(long, value_enum, default_value = "recursive")]
        method: InferMethod,
    },
    /// Formal inverse G of F.
    Invert {
        #[command(flatten)]
        args: MapArgs,
        #[arg(long, value_enum, default_value = "solve")]
        method: InvertMethod,
    },
    /// Jacobian determinant, or the Jacobian matrix with --matrix.
    Jacobian {
        #[command(flatten)]
        args: MapArgs,
        #[arg(long, value_enum, default_value = "direct")]
        method: JacobianMethod,
        #[arg(long)]
        matrix: bool,
    },
    /// det JF = 1 versus div a = 0.
    Keller {
        #[command(flatten)]
        args: MapArgs,
    },
    /// The flow F_t = exp(tA) z, symbolic in t unless --t is given.
    Deform {
        #[command(flatten)]
        args: MapArgs,
        /// Rational time, e.g. 2 or -1/2.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Oddness of F and a, and whether G(z) = -F(-z).
    Parity {
        #[command(flatten)]
        args: MapArgs,
    },
    /// Inverse and generator of z + H when (JH)^2 = 0.
    Bcw {
        #[command(flatten)]
        args: MapArgs,
    },
    /// Det e^M = e^{tr M} through the flow of a(z) = Mz.
    Liouville {
        /// Rows separated by ';', entries by spaces or commas: "0 1; 0 0".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Defaults to exact-nilpotent when M is nilpotent, numeric otherwise.
        #[arg(long)]
        mode: Option<LiouvilleMode>,
        #[arg(long)]
        pretty: bool,
    },
    /// The full identity suite on one map.
    Verify {
        #[command(flatten)]
        args: MapArgs,
    },
    /// The identity suite on seeded random maps.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Variable count; cycles through 1, 2, 3 when absent.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=6))]
        n: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEGREE, value_parser = clap::value_parser!(u32).range(2..))]
        degree: u32,
        #[arg(long, default_value_t = 50)]
        cases: u64,
        #[arg(long)]
        pretty: bool,
    },
}

/// What a subcommand produced.
struct Outcome {
    json: Value,
    text: String,
    /// An identity that should hold did not.
    failed: bool,
}

enum Failure {
    Usage(String),
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(args: &MapArgs, extra: u32) -> Result<MapFile, Failure> {
    let text = std::fs::read_to_string(&args.map)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.map.display())))?;
    Ok(parse_map(&text, args.degree + extra)?)
}

fn map_text<C: Coeff>(m: &MapTuple<C>, names: &[String], label: &str) -> String {
    m.components()
        .iter()
        .enumerate()
        .map(|(k, s)| format!("{label}{} = {}\n", k + 1, format_with_names(s, names)))
        .collect()
}

fn matrix_text(m: &SeriesMatrix, names: &[String]) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|s| format_with_names(s, names)).collect();
        let _ = writeln!(out, "[{}]", cells.join(", "));
    }
    out
}

fn check_lines(checks: &crate::report::Report) -> String {
    let mut out = String::new();
    for c in &checks.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(out, "{mark} {} ({d})", c.name);
            }
            None => {
                let _ = writeln!(out, "{mark} {}", c.name);
            }
        }
    }
    out
}

fn infer(args: &MapArgs, method: InferMethod) -> Result<Outcome, Failure> {
    let file = load(args, 0)?;
    let f = &file.map;
    let d = args.degree;
    let (a, other) = match method {
        InferMethod::Recursive => (infer_generator_recursive(f)?, None),
        InferMethod::Log => (infer_generator_log(f)?, None),
        InferMethod::Both => (infer_generator_recursive(f)?, Some(infer_generator_log(f)?)),
    };
    let mut json = json!({ "degree": d, "a": a.coeffs().to_json() });
    let mut text = map_text(a.coeffs(), &file.vars, "a");
    let mut failed = false;
    if let Some(b) = other {
        let agree = a == b;
        failed = !agree;
        json["a_log"] = b.coeffs().to_json();
        json["agree"] = json!(agree);
        let _ = writeln!(text, "recursive and log methods agree: {agree}");
    }
    Ok(Outcome { json, text, failed })
}

fn invert(args: &MapArgs, method: InvertMethod) -> Result<Outcome, Failure> {
    let file = load(args, 0)?;
    let f = &file.map;
    let d = args.degree;
    let id = MapTuple::identity(f.nvars(), d);
    let run = |m: InvertMethod| match m {
        InvertMethod::Exp => invert_exp(f),
        InvertMethod::Iterates => invert_iterates(f),
        _ => invert_solve(f),
    };
    let two_sided = |g: &MapTuple| -> Result<bool, JetError> {
        Ok(f.compose(g)? == id && g.compose(f)? == id)
    };
    match method {
        InvertMethod::All => {
            let gs = [
                ("exp", run(InvertMethod::Exp)?),
                ("iterates", run(InvertMethod::Iterates)?),
                ("solve", run(InvertMethod::Solve)?),
            ];
            let agree = gs.iter().all(|(_, g)| *g == gs[2].1);
            let inverse = two_sided(&gs[2].1)?;
            let mut obj = serde_json::Map::new();
            let mut text = String::new();
            for (name, g) in &gs {
                obj.insert(name.to_string(), g.to_json());
                let _ = writeln!(text, "# {name}");
                text.push_str(&map_text(g, &file.vars, "G"));
            }
            let _ = writeln!(text, "methods agree: {agree}\nF(G) = G(F) = z: {inverse}");
            Ok(Outcome {
                json: json!({ "degree": d, "G": obj, "agree": agree, "inverse": inverse }),
                text,
                failed: !(agree && inverse),
            })
        }
        m => {
            let g = run(m)?;
            let inverse = two_sided(&g)?;
            let mut text = map_text(&g, &file.vars, "G");
            let _ = writeln!(text, "F(G) = G(F) = z: {inverse}");
            Ok(Outcome {
                json: json!({ "degree": d, "G": g.to_json(), "inverse": inverse }),
                text,
                failed: !inverse,
            })
        }
    }
}

fn jacobian(args: &MapArgs, method: JacobianMethod, matrix: bool) -> Result<Outcome, Failure> {
    let file = load(args, 1)?;
    let f = &file.map;
    let d = args.degree;
    let n = f.nvars();
    let method_name = match method {
        JacobianMethod::Direct => "direct",
        JacobianMethod::Exp => "exp",
    };
    if matrix {
        let m = match method {
            JacobianMethod::Direct => jacobian_matrix_direct(f),
            JacobianMethod::Exp => {
                let a = infer_generator_recursive(f)?;
                jacobian_matrix_exp(&a, &SeriesMatrix::identity(n, n, f.degree()), &int(1))?
            }
        };
        let m = m.truncate(d)?;
        Ok(Outcome {
            json: json!({ "degree": d, "method": method_name, "JF": m.to_json() }),
            text: matrix_text(&m, &file.vars),
            failed: false,
        })
    } else {
        let det = match method {
            JacobianMethod::Direct => jacobian_det_direct(f),
            JacobianMethod::Exp => jacobian_det_exp(&infer_generator_recursive(f)?, &int(1))?,
        };
        let det = det.truncate(d)?;
        Ok(Outcome {
            json: json!({ "degree": d, "method": method_name, "jacobian": det.to_json() }),
            text: format!("J = {}\n", format_with_names(&det, &file.vars)),
            failed: false,
        })
    }
}

fn keller(args: &MapArgs) -> Result<Outcome, Failure> {
    let file = load(args, 1)?;
    let r = keller_check(&file.map)?;
    Ok(Outcome {
        json: serde_json::to_value(&r).expect("plain struct"),
        text: format!(
            "det JF = 1: {}\ndiv a = 0: {}\n(modulo degree > {})\n",
            r.jac_is_one, r.div_is_zero, r.degree
        ),
        failed: !r.consistent(),
    })
}

fn deform_cmd(args: &MapArgs, t: Option<&str>) -> Result<Outcome, Failure> {
    let file = load(args, 0)?;
    let d = args.degree;
    let a = infer_generator_recursive(&file.map)?;
    let ft = deform(&a)?;
    match t {
        None => {
            let text = map_text(ft.map(), &file.vars, "F");
            Ok(Outcome {
                json: json!({ "degree": d, "t": "symbolic", "Ft": ft.to_json() }),
                text,
                failed: false,
            })
        }
        Some(t) => {
            let t0: Rational = parse_rational(t).map_err(|_| Failure::Usage(format!("--t expects a rational, got {t:?}")))?;
            let f = ft.specialize(&t0);
            Ok(Outcome {
                json: json!({ "degree": d, "t": rational_to_string(&t0), "F": f.to_json() }),
                text: map_text(&f, &file.vars, "F"),
                failed: false,
            })
        }
    }
}

fn parity(args: &MapArgs) -> Result<Outcome, Failure> {
    let file = load(args, 0)?;
    let r = parity_check(&file.map)?;
    Ok(Outcome {
        json: serde_json::to_value(&r).expect("plain struct"),
        text: format!(
            "F odd: {}\na odd: {}\na even: {}\nG(z) = -F(-z): {}\n",
            r.f_odd, r.a_odd, r.a_even, r.g_equals_minus_f_minus
        ),
        failed: !r.consistent(),
    })
}

fn bcw(args: &MapArgs) -> Result<Outcome, Failure> {
    let file = load(args, 0)?;
    let m = &file.map;
    // accept either F = z + H or H itself
    let h = if m.is_in_f1() {
        m.try_sub(&MapTuple::identity(m.nvars(), m.degree()))?
    } else {
        m.clone()
    };
    let r = bcw_case(&h)?;
    let mut text = check_lines(&r.checks);
    if let Some(g) = &r.g {
        text.push_str(&map_text(g, &file.vars, "G"));
    }
    Ok(Outcome {
        json: r.to_json(),
        text,
        failed: r.nilpotent && !r.passed(),
    })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<String>>, Failure> {
    let rows: Vec<Vec<String>> = s
        .split(';')
        .map(|r| r.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(String::from).collect())
        .collect();
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Failure::Usage(format!("--matrix must be square, got {s:?}")));
    }
    Ok(rows)
}

fn liouville(matrix: &str, mode: Option<LiouvilleMode>) -> Result<Outcome, Failure> {
    let cells = parse_matrix(matrix)?;
    let exact: Option<ConstantMatrix> = cells
        .iter()
        .map(|r| r.iter().map(|x| parse_rational(x).ok()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .map(|rows| ConstantMatrix::new(rows).expect("square"));
    let mode = mode.unwrap_or(match &exact {
        Some(m) if m.is_nilpotent() => LiouvilleMode::ExactNilpotent,
        _ => LiouvilleMode::Numeric,
    });
    let r = match mode {
        LiouvilleMode::ExactNilpotent => {
            let m = exact.ok_or_else(|| Failure::Usage("exact mode needs rational entries".into()))?;
            liouville_check_exact(&m)?
        }
        LiouvilleMode::Numeric => {
            let rows = cells
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| match parse_rational(x) {
                            Ok(q) => Ok(f64::from_rational(&q)),
                            Err(_) => x.parse::<f64>().map_err(|_| Failure::Usage(format!("bad matrix entry {x:?}"))),
                        })
                        .collect::<Result<Vec<f64>, Failure>>()
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            liouville_check_numeric(&ConstantMatrix::new(rows)?)?
        }
    };
    let text = format!(
        "e^M = [{}]\ndet e^M = {}\ne^(tr M) = {}\n{}",
        r.exp_m.iter().map(|row| row.join(" ")).collect::<Vec<_>>().join("; "),
        r.det_exp,
        r.exp_trace,
        check_lines(&r.checks)
    );
    Ok(Outcome {
        json: r.to_json(),
        text,
        failed: !r.passed(),
    })
}

fn verify(args: &MapArgs) -> Result<Outcome, Failure> {
    let file = load(args, 1)?;
    let r = verify_map(&file.map)?;
    Ok(Outcome {
        json: json!({ "degree": r.degree, "passed": r.passed(), "checks": r.checks }),
        text: check_lines(&r),
        failed: !r.passed(),
    })
}

fn selftest_cmd(seed: u64, n: Option<u64>, degree: u32, cases: u64) -> Outcome {
    let r = selftest(seed, n.map(|k| k as usize), degree, cases);
    let mut text = String::new();
    for c in &r.cases {
        let _ = writeln!(
            text,
            "case {:3} n={} {} {}",
            c.case,
            c.nvars,
            if c.keller { "keller " } else { "generic" },
            if c.passed { "ok" } else { "FAIL" }
        );
        for f in &c.failures {
            let _ = writeln!(text, "    {}: {}", f.name, f.detail.as_deref().unwrap_or(""));
        }
    }
    let _ = writeln!(text, "{} of {} cases passed", r.cases.len() - r.failed(), r.cases.len());
    Outcome {
        json: serde_json::to_value(&r).expect("plain struct"),
        text,
        failed: !r.passed,
    }
}

fn dispatch(cmd: &Command) -> Result<(Outcome, bool), Failure> {
    Ok(match cmd {
        Command::Infer { args, method } => (infer(args, *method)?, args.pretty),
        Command::Invert { args, method } => (invert(args, *method)?, args.pretty),
        Command::Jacobian { args, method, matrix } => (jacobian(args, *method, *matrix)?, args.pretty),
        Command::Keller { args } => (keller(args)?, args.pretty),
        Command::Deform { args, t } => (deform_cmd(args, t.as_deref())?, args.pretty),
        Command::Parity { args } => (parity(args)?, args.pretty),
        Command::Bcw { args } => (bcw(args)?, args.pretty),
        Command::Liouville { matrix, mode, pretty } => (liouville(matrix, *mode)?, *pretty),
        Command::Verify { args } => (verify(args)?, args.pretty),
        Command::Selftest { seed, n, degree, cases, pretty } => (selftest_cmd(*seed, *n, *degree, *cases), *pretty),
    })
}

/// Runs the command line `argv` (program name first), writing the result to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((outcome, pretty)) => {
            if pretty {
                let _ = write!(out, "{}", outcome.text);
            } else {
                let _ = writeln!(out, "{}", outcome.json);
            }
            i32::from(outcome.failed)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

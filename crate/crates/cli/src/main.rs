//! `gwcount`: quadratically enriched degrees and plane counts.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwcount_core::bezoutian::{bezoutian_form, local_form_at, BezoutianError, PolynomialSystem};
use gwcount_core::counts::{count_d_planes, CountError, PlaneCountQuery};
use gwcount_core::field::{FieldDescriptor, Scalar};
use gwcount_core::gw::{diagonalize, form_invariants, trace_form, GwClass, GwError, SymmetricForm};
use gwcount_core::json::{CountReportJson, GwClassJson, InvariantsJson};
use gwcount_core::matrix::Matrix;
use gwcount_core::poly::{parse, PolyRing, Polynomial};
use gwcount_core::verify::{run_suite, SUITES};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gwcount", version, about = "Grothendieck–Witt valued degrees and enriched counts of planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct Common {
    /// Base field: `Q` or `Fp:<odd prime>`.
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Class of the Bezoutian form of a square system, globally or at a zero.
    Degree {
        #[command(flatten)]
        common: Common,
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        /// Polynomials separated by ';', or `@path` to read them from a file.
        #[arg(long)]
        system: String,
        /// Comma-separated coordinates of a zero.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Enriched count of d-planes on a general complete intersection.
    Planes {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'n')]
        n: u32,
        /// Comma-separated degrees.
        #[arg(long)]
        degrees: String,
    },
    /// Operations on symmetric bilinear forms.
    Gw {
        #[command(subcommand)]
        op: GwOp,
    },
    /// Run a property suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GwOp {
    /// Rank, signature and discriminant of a Gram matrix.
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    /// Diagonal form and change of basis.
    Diagonalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    /// Trace form of `a` in `k[x]/(poly)`.
    TraceForm {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        element: String,
    },
}

/// A failure with its exit code and machine-readable tag.
struct Failure {
    code: u8,
    tag: &'static str,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Failure {
        Failure { code: 2, tag: "parse", message: message.to_string() }
    }

    fn other(message: impl ToString) -> Failure {
        Failure { code: 1, tag: "error", message: message.to_string() }
    }
}

impl From<BezoutianError> for Failure {
    fn from(e: BezoutianError) -> Self {
        let (code, tag) = match &e {
            BezoutianError::Parse(_) | BezoutianError::Poly(_) | BezoutianError::PointDimension { .. } => (2, "parse"),
            BezoutianError::InfiniteDimensional(_) => (3, "infinite-dimensional"),
            BezoutianError::DegenerateZero => (4, "degenerate-zero"),
            BezoutianError::NotAZero => (1, "not-a-zero"),
            _ => (1, "error"),
        };
        Failure { code, tag, message: e.to_string() }
    }
}

impl From<GwError> for Failure {
    fn from(e: GwError) -> Self {
        match e {
            GwError::NotSymmetric => Failure { code: 2, tag: "not-symmetric", message: e.to_string() },
            GwError::DegenerateForm => Failure { code: 4, tag: "degenerate", message: e.to_string() },
            _ => Failure::other(e),
        }
    }
}

fn field_of(common: &Common) -> Result<FieldDescriptor, Failure> {
    FieldDescriptor::parse(&common.field).map_err(Failure::parse)
}

fn read_input(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_constant(text: &str, ring: &std::sync::Arc<PolyRing>) -> Result<Scalar, Failure> {
    let p = parse(text, ring).map_err(Failure::parse)?;
    if !p.is_constant() {
        return Err(Failure::parse(format!("{text:?} is not a constant")));
    }
    Ok(p.constant_term())
}

fn parse_gram(text: &str, field: FieldDescriptor) -> Result<Matrix, Failure> {
    let ring = PolyRing::with_n_vars(field, 0);
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|x| parse_constant(x, &ring)).collect())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Failure::parse("Gram matrix must be square and nonempty"));
    }
    Ok(Matrix::from_rows(field, rows))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_degree(common: &Common, vars: &str, system: &str, at: Option<&str>) -> Result<(), Failure> {
    let field = field_of(common)?;
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let text = read_input(system)?;
    let sys = PolynomialSystem::parse(field, &names, &text)?;
    let (class, dim, stabilized_at, point) = match at {
        None => {
            let form = bezoutian_form(&sys)?;
            (form.gw_class()?.simplify(true), form.dim(), None, None)
        }
        Some(at) => {
            let z: Vec<Scalar> = at
                .split(',')
                .map(|c| parse_constant(c, sys.ring()))
                .collect::<Result<_, _>>()?;
            let rep = local_form_at(&sys, &z)?;
            (rep.gw_class()?.simplify(true), rep.local_dim, Some(rep.stabilized_at), Some(z))
        }
    };
    let inv = class.invariants();
    match common.format {
        Format::Human => {
            println!("{class}");
            println!("{inv}");
            println!("dimension {dim}");
        }
        Format::Json => print_json(&json!({
            "field": field.to_string(),
            "vars": names,
            "system": text.trim(),
            "point": point.map(|z| z.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "dim": dim,
            "stabilized_at": stabilized_at,
            "gw": GwClassJson::from(&class),
        })),
    }
    Ok(())
}

fn cmd_planes(common: &Common, d: u32, n: u32, degrees: &str) -> Result<(), Failure> {
    let field = field_of(common)?;
    let degs: Vec<u32> = degrees
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Failure::parse(format!("bad degree {s:?}"))))
        .collect::<Result<_, _>>()?;
    let q = PlaneCountQuery::new(d, n, degs, field).map_err(Failure::parse)?;
    let report = match count_d_planes(&q) {
        Ok(r) => r,
        Err(CountError::NotOrientable(o)) => {
            return Err(Failure { code: 5, tag: "not-orientable", message: o.to_string() });
        }
        Err(e) => return Err(Failure::other(e)),
    };
    match common.format {
        Format::Human => {
            println!("{}", report.gw_class);
            println!("n_C = {}, n_R = {}", report.n_c, report.n_r);
            println!("{}", report.invariants);
            for c in &report.caveats {
                println!("note: {c}");
            }
        }
        Format::Json => print_json(&serde_json::to_value(CountReportJson::from(&report)).expect("serializable")),
    }
    Ok(())
}

fn cmd_gw(op: &GwOp) -> Result<(), Failure> {
    match op {
        GwOp::Invariants { common, gram } => {
            let field = field_of(common)?;
            let form = SymmetricForm::new(parse_gram(gram, field)?)?;
            let inv = form_invariants(&form)?;
            let class = GwClass::from_form(&form)?.simplify(true);
            match common.format {
                Format::Human => {
                    println!("{class}");
                    println!("{inv}");
                }
                Format::Json => print_json(&json!({
                    "invariants": InvariantsJson::from(&inv),
                    "gw": GwClassJson::from(&class),
                })),
            }
        }
        GwOp::Diagonalize { common, gram } => {
            let field = field_of(common)?;
            let form = SymmetricForm::new(parse_gram(gram, field)?)?;
            let d = diagonalize(&form)?;
            let diag: Vec<String> = d.diagonal.iter().map(Scalar::to_string).collect();
            match common.format {
                Format::Human => {
                    println!("diagonal: {}", diag.join(", "));
                    println!("transform:\n{}", d.transform);
                }
                Format::Json => print_json(&json!({
                    "diagonal": diag,
                    "transform": d.transform.to_rows().iter()
                        .map(|r| r.iter().map(Scalar::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })),
            }
        }
        GwOp::TraceForm { common, poly, element } => {
            let field = field_of(common)?;
            let ring = PolyRing::new(field, &["x"]).expect("one variable");
            let uni = |text: &str| -> Result<_, Failure> {
                let p: Polynomial = parse(text, &ring).map_err(Failure::parse)?;
                p.to_univariate().ok_or_else(|| Failure::parse("expected a polynomial in x"))
            };
            let t = trace_form(&uni(poly)?, &uni(element)?)?;
            let class = GwClass::from_form(&t.form)?.simplify(true);
            let warnings: Vec<String> = t.warnings.iter().map(|w| format!("{w:?}")).collect();
            match common.format {
                Format::Human => {
                    println!("{class}");
                    println!("{}", class.invariants());
                    println!("gram:\n{}", t.form.gram());
                    for w in &warnings {
                        println!("warning: {w}");
                    }
                }
                Format::Json => print_json(&json!({
                    "gram": t.form.gram().to_rows().iter()
                        .map(|r| r.iter().map(Scalar::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "gw": GwClassJson::from(&class),
                    "warnings": warnings,
                })),
            }
        }
    }
    Ok(())
}

fn cmd_verify(suite: &str, seed: u64) -> Result<(), Failure> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut ok = true;
    for name in names {
        let rep = run_suite(name, seed)
            .ok_or_else(|| Failure::parse(format!("unknown suite {name:?}; known: all, {}", SUITES.join(", "))))?;
        println!("{rep}");
        ok &= rep.ok();
    }
    if ok {
        Ok(())
    } else {
        Err(Failure { code: 1, tag: "verify-failed", message: "one or more properties failed".into() })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Degree { common, vars, system, at } => cmd_degree(common, vars, system, at.as_deref()),
        Command::Planes { common, d, n, degrees } => cmd_planes(common, *d, *n, degrees),
        Command::Gw { op } => cmd_gw(op),
        Command::Verify { suite, seed } => cmd_verify(suite, *seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.tag, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motivic::mass::{check_serre, integrate, s4_char2_masses, serre_mass, MassSpec};
use motivic::stringy::{evaluate_snc, SncModel};
use motivic::weights::{b_order, codim_fixed_locus, v_hyperplane, w_weight, HyperplaneDatum, Space};
use motivic::{fixtures, Exponent, MotivicValue};
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

mod table;

use table::Table;

/// Exact motivic masses, weights and stringy motifs.
#[derive(Debug, Parser)]
#[command(name = "motivic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Also evaluate the results at L = Q (a rational > 1, e.g. 2 or 9/4).
    #[arg(long, value_name = "Q", global = true)]
    specialize: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a mass specification (JSON).
    Mass { spec: PathBuf },
    /// Motivic Serre mass of degree-M extensions in residue characteristic P.
    Serre {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u64,
    },
    /// The S4 table in characteristic 2 with its duality check.
    S4,
    /// Stringy motif of an SNC model: a JSON file or a bundled fixture name.
    Stringy {
        model: String,
        /// Index at which to read a template fixture.
        #[arg(long, value_name = "N")]
        param: Option<i64>,
    },
    /// Weights v, w, codimension and b for a hyperplane datum (JSON).
    Weight {
        datum: PathBuf,
        /// Order of the stabilizer; defaults to the lcm of the orbit sizes.
        #[arg(long, value_name = "N")]
        h_order: Option<u64>,
    },
    /// Dual of an expression in L (L -> L^-1).
    Dualize { expr: String },
}

#[derive(Debug)]
enum Failure {
    /// Unreadable input: JSON or expression syntax.
    Parse(String),
    /// Well-formed input that is rejected, or a computation error.
    Invalid(String),
    /// A computed check did not hold.
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 3,
            Failure::Invalid(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Check(m) => m,
        }
    }
}

impl From<motivic::Error> for Failure {
    fn from(e: motivic::Error) -> Self {
        match e {
            motivic::Error::Parse { .. } => Failure::Parse(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        let inner = e.into_inner();
        let msg = format!("{}: at `{at}`: {inner}", path.display());
        let syntax = matches!(inner.classify(), serde_json::error::Category::Syntax | serde_json::error::Category::Eof);
        if syntax || inner.to_string().starts_with("parse error") {
            Failure::Parse(msg)
        } else {
            Failure::Invalid(msg)
        }
    })
}

fn parse_point(text: &str) -> Outcome<BigRational> {
    let q: BigRational = text
        .trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("--specialize: `{text}` is not a rational")))?;
    if q <= BigRational::from_integer(1.into()) {
        return Err(Failure::Invalid(format!("--specialize: {q} must be greater than 1")));
    }
    Ok(q)
}

/// Exact value at `q` when rational, and a float approximation.
fn specialized(v: &MotivicValue, q: &BigRational) -> (Option<String>, Option<f64>) {
    if v.is_infinite() {
        return (Some(motivic::text::INFINITY_TOKEN.into()), None);
    }
    let exact = v.specialize(q).ok().map(|x| x.to_string());
    let approx = rational_to_f64(q).and_then(|x| v.approximate(x));
    (exact, approx)
}

fn rational_to_f64(q: &BigRational) -> Option<f64> {
    let n: f64 = q.numer().to_string().parse().ok()?;
    let d: f64 = q.denom().to_string().parse().ok()?;
    Some(n / d)
}

fn specialized_cells(v: &MotivicValue, q: &BigRational) -> Vec<Value> {
    let (exact, approx) = specialized(v, q);
    vec![json!(exact), json!(approx)]
}

fn specialized_line(label: &str, v: &MotivicValue, q: &BigRational) -> String {
    let (exact, approx) = specialized(v, q);
    let mut line = format!("{label} at L = {q}: {}", exact.as_deref().unwrap_or("irrational"));
    if let Some(a) = approx {
        let _ = write!(line, " (≈ {a})");
    }
    line
}

struct Report {
    table: Table,
    pretty: String,
    ok: bool,
}

/// A report for a single value.
fn value_report(v: &MotivicValue, q: Option<&BigRational>) -> Report {
    let mut table = Table::single(vec!["value"]);
    let mut row = vec![json!(v.to_string())];
    let mut pretty = v.to_string();
    if let Some(q) = q {
        table.columns.extend(["at_q", "approx"]);
        row.extend(specialized_cells(v, q));
        pretty.push('\n');
        pretty.push_str(&specialized_line("value", v, q));
    }
    table.rows.push(row);
    Report { table, pretty, ok: true }
}

fn run_mass(path: &Path, q: Option<&BigRational>) -> Outcome<Report> {
    let spec: MassSpec = read_json(path)?;
    spec.validate()?;
    Ok(value_report(&integrate(&spec), q))
}

fn run_serre(p: u64, m: u64, q: Option<&BigRational>) -> Outcome<Report> {
    let value = serre_mass(p, m)?;
    let pass = check_serre(p, m)?;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut table = Table::single(vec!["p", "m", "value", "expected", "pass"]);
    let expected = MotivicValue::lpow(Exponent::from_integer(1 - m as i64));
    let mut row = vec![json!(p), json!(m), json!(value.to_string()), json!(expected.to_string()), json!(pass)];
    let mut pretty = format!("{value}  {verdict}");
    if let Some(q) = q {
        table.columns.extend(["at_q", "approx"]);
        row.extend(specialized_cells(&value, q));
        pretty.push('\n');
        pretty.push_str(&specialized_line("value", &value, q));
    }
    table.rows.push(row);
    Ok(Report { table, pretty, ok: pass })
}

fn run_s4(q: Option<&BigRational>) -> Outcome<Report> {
    let t = s4_char2_masses()?;
    let mut table = Table::rows(vec!["partition", "M", "M_dual", "verified_dual"]);
    if q.is_some() {
        table.columns.extend(["M_at_q", "M_dual_at_q"]);
    }
    let mut push = |label: &str, m: String, md: String, ok: bool, values: (&MotivicValue, &MotivicValue)| {
        let mut row = vec![json!(label), json!(m), json!(md), json!(ok)];
        if let Some(q) = q {
            row.push(json!(specialized(values.0, q).0));
            row.push(json!(specialized(values.1, q).0));
        }
        table.rows.push(row);
    };
    for r in &t.rows {
        push(
            r.partition,
            r.mass.to_string(),
            r.dual_mass.to_string(),
            r.verified_dual && r.codim_shift,
            (&r.mass, &r.dual_mass),
        );
    }
    push(
        "total",
        t.total_text.clone(),
        t.dual_total_text.clone(),
        t.total_verified_dual,
        (&t.total, &t.dual_total),
    );
    let ok = t.total_verified_dual && t.rows.iter().all(|r| r.verified_dual && r.codim_shift);
    let pretty = table.aligned();
    Ok(Report { table, pretty, ok })
}

fn run_stringy(model: &str, param: Option<i64>, q: Option<&BigRational>) -> Outcome<Report> {
    let path = Path::new(model);
    let snc: SncModel = if path.exists() {
        read_json(path)?
    } else if fixtures::names().any(|n| n == model) {
        if fixtures::is_template(model) {
            let n = param.ok_or_else(|| Failure::Invalid(format!("fixture `{model}` needs --param N")))?;
            fixtures::load_template(model)?.instantiate(n)
        } else {
            fixtures::load_model(model)?
        }
    } else {
        let known: Vec<_> = fixtures::names().collect();
        return Err(Failure::Invalid(format!(
            "`{model}` is neither a file nor a fixture (fixtures: {})",
            known.join(", ")
        )));
    };
    Ok(value_report(&evaluate_snc(&snc)?, q))
}

fn run_weight(path: &Path, h_order: Option<u64>) -> Outcome<Report> {
    let datum: HyperplaneDatum = read_json(path)?;
    datum.validate()?;
    let order = h_order.unwrap_or_else(|| {
        datum
            .shape
            .components
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.degree))
    });
    let v = v_hyperplane(&datum)?;
    let codim = codim_fixed_locus(&datum.shape, Space::Hyperplane)?;
    let w = w_weight(codim, v);
    let b = b_order(&datum, order)?;
    let mut table = Table::single(vec!["v", "w", "codim", "b", "h_order"]);
    table
        .rows
        .push(vec![json!(v.to_string()), json!(w.to_string()), json!(codim), json!(b.to_string()), json!(order)]);
    let pretty = format!("v = {v}\nw = {w}\ncodim = {codim}\nb = {b}  (#H = {order})");
    Ok(Report { table, pretty, ok: true })
}

fn run_dualize(expr: &str, q: Option<&BigRational>) -> Outcome<Report> {
    let v: MotivicValue = expr.parse()?;
    Ok(value_report(&v.dualize()?, q))
}

fn run(cli: &Cli) -> Outcome<Report> {
    let q = cli.specialize.as_deref().map(parse_point).transpose()?;
    let q = q.as_ref();
    match &cli.command {
        Command::Mass { spec } => run_mass(spec, q),
        Command::Serre { p, m } => run_serre(*p, *m, q),
        Command::S4 => run_s4(q),
        Command::Stringy { model, param } => run_stringy(model, *param, q),
        Command::Weight { datum, h_order } => run_weight(datum, *h_order),
        Command::Dualize { expr } => run_dualize(expr, q),
    }
}

fn emit(report: &Report, format: Format) -> Outcome<()> {
    let text = match format {
        Format::Pretty => report.pretty.clone(),
        Format::Json => serde_json::to_string_pretty(&report.table.to_json())
            .map_err(|e| Failure::Invalid(e.to_string()))?,
        Format::Csv => report.table.to_csv().map_err(Failure::Invalid)?,
    };
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", text.trim_end()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Invalid(e.to_string())),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        emit(&report, cli.format)?;
        if report.ok {
            Ok(())
        } else {
            Err(Failure::Check("check failed".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

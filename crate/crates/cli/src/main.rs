//! `asmdpp` command-line front end.
//!
//! Every command prints one report `{command, inputs, expected, got, equal,
//! runtime_ms}` as JSON (or CSV, one row per case). Exit status is 0 when all
//! checks hold, 1 on a mismatch and 2 on a configuration or domain error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use asmdpp::asm::{
    enumerate_asm, homogeneous_bridge_check, ik_determinant, lambda_det_expansion, lambda_det_tsystem, sixv_bruteforce,
    z_asm_bruteforce,
};
use asmdpp::check::Check;
use asmdpp::dpp::{asm_dpp_sandwich_check, enumerate_dpp, z_dpp_bruteforce, Variant};
use asmdpp::exactalg::{bindings, format_rational, parse_mpoly, parse_rational};
use asmdpp::genfun::{determinant_rules_check, product_rules_check};
use asmdpp::lorentzian::{
    commute_family_check, commute_off_variety, commute_on_variety, ell_t_exp_check, l_t_addition_check,
    lambda_series_check, orthonormality_check, structured_det_check, t_st_addition_check, tau_addition_check,
    variety_intersection, vvt_factorization_check, LorentzParams,
};
use asmdpp::{Error, MPoly, Matrix, RatFun, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "asmdpp", version, about = "Exact ASM/DPP partition functions and their determinant formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternating sign matrices.
    Asm {
        #[command(subcommand)]
        action: Family,
    },
    /// Descending plane partitions.
    Dpp {
        #[command(subcommand)]
        action: Family,
    },
    /// Robbins-Rumsey lambda-determinant of a matrix read from a file.
    LambdaDet {
        /// Whitespace-separated entries, one row per line.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Exact identity checks; exit 1 on any mismatch.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Intersection of the two integrable varieties.
    Variety {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// List all objects of size n with their statistics.
    Enum {
        #[arg(long)]
        n: usize,
    },
    /// Brute-force partition function in x, y, z, w.
    Zfun(ZfunArgs),
}

#[derive(Args, Debug)]
struct ZfunArgs {
    #[arg(long)]
    n: usize,
    /// Specialize a variable, e.g. `--set w=1 --set x=1/2`.
    #[arg(long = "set", value_name = "VAR=VALUE")]
    set: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Refined {
    /// Refined by z; w = 1.
    Z,
    /// Doubly refined.
    Zw,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LorentzPart {
    Commute,
    Spectral,
    Addition,
    Det,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Z_ASM = Z_DPP by brute force on both sides.
    AsmDpp {
        #[arg(long)]
        n_max: usize,
        /// Without this flag both sides are compared at z = w = 1.
        #[arg(long, value_enum)]
        refined: Option<Refined>,
    },
    /// Izergin-Korepin determinant against the six-vertex sum.
    Ik {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Structured-family product, inverse and determinant rules.
    Genfun {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Also check the printed forms that are known to be wrong.
        #[arg(long)]
        printed: bool,
    },
    /// Lorentzian transfer matrix checks; all parts when none is named.
    Lorentz {
        #[arg(value_enum)]
        part: Option<LorentzPart>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Unitriangular sandwich between M_ASM and M_DPP.
    Sandwich {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Serialize, Debug)]
struct Case {
    key: String,
    expected: Value,
    got: Value,
    equal: bool,
}

impl Case {
    fn new(key: impl Into<String>, expected: impl Into<Value>, got: impl Into<Value>, equal: bool) -> Self {
        Case { key: key.into(), expected: expected.into(), got: got.into(), equal }
    }

    fn from_check(prefix: &str, c: Check) -> Self {
        let key = if prefix.is_empty() { c.name } else { format!("{prefix}: {}", c.name) };
        Case { key, expected: Value::String(c.expected), got: Value::String(c.got), equal: c.holds }
    }
}

#[derive(Serialize, Debug)]
struct Report {
    command: String,
    inputs: Value,
    expected: Value,
    got: Value,
    equal: bool,
    runtime_ms: u128,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    cases: Vec<Case>,
}

/// What a command produced before timing and formatting.
struct Outcome {
    expected: Value,
    got: Value,
    cases: Vec<Case>,
}

impl Outcome {
    /// A plain computation with nothing to compare against.
    fn value(got: Value) -> Self {
        Outcome { expected: Value::Null, got, cases: Vec::new() }
    }

    /// Cases sorted by key; `expected`/`got` map keys to values.
    fn cases(mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| natural_key(&a.key).cmp(&natural_key(&b.key)));
        let expected = cases.iter().map(|c| (c.key.clone(), c.expected.clone())).collect();
        let got = cases.iter().map(|c| (c.key.clone(), c.got.clone())).collect();
        Outcome { expected: Value::Object(expected), got: Value::Object(got), cases }
    }

    fn equal(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }
}

/// Orders "n=10" after "n=9".
fn natural_key(s: &str) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    let mut text = String::new();
    let mut num: Option<u64> = None;
    for ch in s.chars() {
        if let Some(d) = ch.to_digit(10) {
            num = Some(num.unwrap_or(0).saturating_mul(10).saturating_add(d as u64));
        } else {
            if let Some(n) = num.take() {
                out.push((std::mem::take(&mut text), n));
            }
            text.push(ch);
        }
    }
    out.push((text, num.unwrap_or(0)));
    out
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).map_err(|e| config(format!("{s:?} is not a rational p/q: {e}")))
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(config(format!("{name} must be positive")));
    }
    Ok(())
}

fn at_most(name: &str, v: usize, max: usize) -> Result<()> {
    positive(name, v)?;
    if v > max {
        return Err(config(format!("{name} = {v} exceeds the practical bound {max}")));
    }
    Ok(())
}

fn specialize(p: &MPoly, vals: &[(String, Rational)]) -> Result<MPoly> {
    if vals.is_empty() {
        return Ok(p.clone());
    }
    let b = bindings(vals.iter().map(|(v, c)| (v.as_str(), RatFun::constant(c.clone()))));
    let r = RatFun::from_poly(p.clone()).substitute(&b)?;
    Ok(r.as_poly().expect("polynomial stays polynomial").clone())
}

fn parse_sets(sets: &[String]) -> Result<Vec<(String, Rational)>> {
    sets.iter()
        .map(|s| {
            let (v, c) = s.split_once('=').ok_or_else(|| config(format!("expected VAR=VALUE, got {s:?}")))?;
            let v = v.trim();
            if !["x", "y", "z", "w"].contains(&v) {
                return Err(config(format!("unknown variable {v:?}; expected x, y, z or w")));
            }
            Ok((v.to_string(), rational(c)?))
        })
        .collect()
}

fn poly_value(p: &MPoly) -> Value {
    Value::String(p.to_string())
}

fn family(kind: &str, action: &Family) -> Result<(Value, Outcome)> {
    match action {
        Family::Enum { n } => {
            at_most("n", *n, 7)?;
            let items: Vec<Value> = if kind == "asm" {
                enumerate_asm(*n)
                    .iter()
                    .map(|b| {
                        let s = b.stats();
                        json!({"rows": b.rows(), "stats": format!("{s:?}"), "weight": poly_value(&s.weight())})
                    })
                    .collect()
            } else {
                enumerate_dpp(*n as u32)
                    .iter()
                    .map(|a| {
                        let s = a.stats(*n as u32);
                        json!({"rows": a.rows(), "stats": format!("{s:?}"), "weight": poly_value(&s.weight())})
                    })
                    .collect()
            };
            let got = json!({"count": items.len(), "items": items});
            Ok((json!({"n": n}), Outcome::value(got)))
        }
        Family::Zfun(args) => {
            at_most("n", args.n, 7)?;
            let sets = parse_sets(&args.set)?;
            let z = if kind == "asm" { z_asm_bruteforce(args.n) } else { z_dpp_bruteforce(args.n as u32) };
            let z = specialize(&z, &sets)?;
            let inputs = json!({"n": args.n, "set": sets.iter().map(|(v, c)| format!("{v}={}", format_rational(c))).collect::<Vec<_>>()});
            Ok((inputs, Outcome::value(poly_value(&z))))
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<Matrix<MPoly>> {
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<Vec<MPoly>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|e| parse_mpoly(e).map_err(CliError::from)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(config("the input must be a nonempty square matrix"));
    }
    Ok(Matrix::from_rows(rows)?)
}

fn lambda_det(input: &PathBuf, lambda: &str) -> Result<(Value, Outcome)> {
    let m = read_matrix(input)?;
    let lam = parse_mpoly(lambda)?;
    let expected = lambda_det_expansion(&m, &lam)?;
    let got = lambda_det_tsystem(&m, &lam)?;
    let inputs = json!({"input": input, "lambda": lam.to_string(), "n": m.rows()});
    let case = Case::new("lambda-det", poly_value(&expected), poly_value(&got), expected == got);
    Ok((inputs, Outcome { expected: poly_value(&expected), got: poly_value(&got), cases: vec![case] }))
}

fn verify_asm_dpp(n_max: usize, refined: Option<Refined>) -> Result<Outcome> {
    at_most("n-max", n_max, 7)?;
    let sets: Vec<(String, Rational)> = match refined {
        None => vec![("z".into(), Rational::from_integer(1.into())), ("w".into(), Rational::from_integer(1.into()))],
        Some(Refined::Z) => vec![("w".into(), Rational::from_integer(1.into()))],
        Some(Refined::Zw) => Vec::new(),
    };
    let ns: Vec<usize> = (1..=n_max).collect();
    let cases = asmdpp::par::map(&ns, |&n| -> Result<Case> {
        let a = specialize(&z_asm_bruteforce(n), &sets)?;
        let d = specialize(&z_dpp_bruteforce(n as u32), &sets)?;
        Ok(Case::new(format!("n={n}"), poly_value(&a), poly_value(&d), a == d))
    });
    Ok(Outcome::cases(cases.into_iter().collect::<Result<_>>()?))
}

/// A nonzero rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
fn sample(rng: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let k: i64 = rng.gen_range(-9..=9);
        if k != 0 {
            break k;
        }
    };
    Rational::new(num.into(), rng.gen_range(1i64..=9).into())
}

fn verify_ik(n: usize, seed: u64, samples: usize) -> Result<Outcome> {
    at_most("n", n, 5)?;
    positive("samples", samples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuples = Vec::new();
    let mut attempts = 0;
    // Draw first, then check in parallel; degenerate draws are replaced.
    while tuples.len() < samples {
        attempts += 1;
        if attempts > 100 * samples {
            return Err(config("could not draw nondegenerate samples"));
        }
        let q = sample(&mut rng);
        let zeta: Vec<Rational> = (0..n).map(|_| sample(&mut rng)).collect();
        let omega: Vec<Rational> = (0..n).map(|_| sample(&mut rng)).collect();
        match ik_determinant(&q, &zeta, &omega) {
            Ok(_) => tuples.push((q, zeta, omega)),
            Err(Error::DegenerateSpectralParameters(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let idx: Vec<usize> = (0..tuples.len()).collect();
    let fmt = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
    let mut cases = asmdpp::par::map(&idx, |&k| -> Result<Case> {
        let (q, zeta, omega) = &tuples[k];
        let bf = sixv_bruteforce(q, zeta, omega)?;
        let ik = ik_determinant(q, zeta, omega)?;
        let key = format!("sample {k}: q={}, zeta=[{}], omega=[{}]", format_rational(q), fmt(zeta), fmt(omega));
        Ok(Case::new(key, format_rational(&bf), format_rational(&ik), bf == ik))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let z = z_asm_bruteforce(n);
    let mut k = 0;
    while k < 5 {
        attempts += 1;
        if attempts > 100 * samples + 500 {
            return Err(config("could not draw nondegenerate homogeneous samples"));
        }
        let (q, r) = (sample(&mut rng), sample(&mut rng));
        match homogeneous_bridge_check(&q, &r, n, &z) {
            Ok(ok) => {
                let key = format!("homogeneous {k}: q={}, r={}", format_rational(&q), format_rational(&r));
                cases.push(Case::new(key, true, ok, ok));
                k += 1;
            }
            Err(Error::DegenerateSpectralParameters(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::cases(cases))
}

fn checks(prefix: &str, cs: Vec<Check>) -> Vec<Case> {
    cs.into_iter().map(|c| Case::from_check(prefix, c)).collect()
}

fn verify_genfun(order: usize, size: usize, printed: bool) -> Result<Outcome> {
    at_most("order", order, 20)?;
    at_most("size", size, 9)?;
    let keep = |c: &Check| printed || !c.name.contains("as printed");
    let mut cs: Vec<Check> = product_rules_check(size, order)?.into_iter().filter(keep).collect();
    cs.extend(determinant_rules_check(size)?.into_iter().filter(keep));
    Ok(Outcome::cases(checks("", cs)))
}

fn verify_lorentz(part: Option<LorentzPart>, order: usize) -> Result<Outcome> {
    at_most("order", order, 16)?;
    let parts = match part {
        Some(p) => vec![p],
        None => vec![LorentzPart::Commute, LorentzPart::Spectral, LorentzPart::Addition, LorentzPart::Det],
    };
    let mut cases = Vec::new();
    for p in parts {
        match p {
            LorentzPart::Commute => {
                let (a, kappa) = (RatFun::constant(Rational::new(2.into(), 3.into())), RatFun::constant(Rational::new(3.into(), 2.into())));
                let on = commute_on_variety(&a, &kappa, order)?;
                cases.push(Case::new("commute: on variety", true, on.commutes(), on.commutes()));
                let off = commute_off_variety(&a, &kappa, order)?;
                let diag = off.first_failure.map(|f| format!("first failure at order {}, entry ({}, {})", f.0, f.1, f.2));
                cases.push(Case::new("commute: off variety fails", true, diag.clone().map_or(Value::Bool(false), Value::String), diag.is_some()));
                cases.extend(checks("commute", commute_family_check(&RatFun::one(), &RatFun::from_int(3), order, 6)?));
            }
            LorentzPart::Spectral => {
                cases.extend(checks("spectral", lambda_series_check(order)?));
                cases.extend(checks("spectral", orthonormality_check(4, order)?));
            }
            LorentzPart::Addition => {
                cases.extend(checks("addition", vec![t_st_addition_check()?]));
                cases.extend(checks("addition", l_t_addition_check()?));
                cases.extend(checks("addition", ell_t_exp_check(4, order.min(8))?));
                cases.extend(checks("addition", tau_addition_check()?.into_iter().filter(|c| !c.name.contains("as printed")).collect()));
            }
            LorentzPart::Det => {
                let p = LorentzParams::symbolic();
                for k in 0..=order.min(8) {
                    cases.extend(checks("det", vvt_factorization_check(&p, k)?));
                    cases.extend(checks("det", vec![structured_det_check(k)?]));
                }
            }
        }
    }
    Ok(Outcome::cases(cases))
}

fn verify_sandwich(n: usize) -> Result<Outcome> {
    at_most("n", n, 7)?;
    let mut cases = Vec::new();
    for variant in [Variant::Plain, Variant::Refined] {
        for k in 1..=n {
            let r = asm_dpp_sandwich_check(k, variant)?;
            let key = format!("{variant:?} n={k}");
            cases.push(Case::new(format!("{key}: generating functions"), true, r.gf_identity, r.gf_identity));
            cases.push(Case::new(format!("{key}: entry-wise"), true, r.entrywise, r.entrywise));
            cases.push(Case::new(format!("{key}: determinants"), r.det_asm.to_string(), r.det_dpp.to_string(), r.det_asm == r.det_dpp));
        }
    }
    Ok(Outcome::cases(cases))
}

fn variety(p: &str, q: &str) -> Result<(Value, Outcome)> {
    let (pr, qr) = (rational(p)?, rational(q)?);
    let pt = variety_intersection(&pr, &qr)?;
    let inputs = json!({"p": format_rational(&pr), "q": format_rational(&qr)});
    let mut out = Outcome::cases(checks("", pt.certificates()));
    out.got = json!({
        "x": format_rational(&pt.x),
        "y": format_rational(&pt.y),
        "sqrt_x": format_rational(&pt.sqrt_x),
        "sqrt_y": format_rational(&pt.sqrt_y),
        "certificates": out.got,
    });
    Ok((inputs, out))
}

fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let (name, inputs, out) = match &cli.command {
        Command::Asm { action } | Command::Dpp { action } => {
            let kind = if matches!(cli.command, Command::Asm { .. }) { "asm" } else { "dpp" };
            let sub = match action {
                Family::Enum { .. } => "enum",
                Family::Zfun(_) => "zfun",
            };
            let (inputs, out) = family(kind, action)?;
            (format!("{kind} {sub}"), inputs, out)
        }
        Command::LambdaDet { input, lambda } => {
            let (inputs, out) = lambda_det(input, lambda)?;
            ("lambda-det".to_string(), inputs, out)
        }
        Command::Variety { p, q } => {
            let (inputs, out) = variety(p, q)?;
            ("variety".to_string(), inputs, out)
        }
        Command::Verify { suite } => match suite {
            Suite::AsmDpp { n_max, refined } => (
                "verify asm-dpp".to_string(),
                json!({"n_max": n_max, "refined": refined.map(|r| format!("{r:?}").to_lowercase())}),
                verify_asm_dpp(*n_max, *refined)?,
            ),
            Suite::Ik { n, seed, samples } => (
                "verify ik".to_string(),
                json!({"n": n, "seed": seed, "samples": samples}),
                verify_ik(*n, *seed, *samples)?,
            ),
            Suite::Genfun { order, size, printed } => (
                "verify genfun".to_string(),
                json!({"order": order, "size": size, "printed": printed}),
                verify_genfun(*order, *size, *printed)?,
            ),
            Suite::Lorentz { part, order } => (
                "verify lorentz".to_string(),
                json!({"part": part.map(|p| format!("{p:?}").to_lowercase()), "order": order}),
                verify_lorentz(*part, *order)?,
            ),
            Suite::Sandwich { n } => ("verify sandwich".to_string(), json!({"n": n}), verify_sandwich(*n)?),
        },
    };
    let equal = out.equal();
    Ok(Report {
        command: name,
        inputs,
        expected: out.expected,
        got: out.got,
        equal,
        runtime_ms: start.elapsed().as_millis(),
        cases: out.cases,
    })
}

fn csv_field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("command,case,expected,got,equal,runtime_ms\n");
            let cmd = csv_field(&Value::String(report.command.clone()));
            if report.cases.is_empty() {
                out += &format!("{cmd},,{},{},{},{}\n", csv_field(&report.expected), csv_field(&report.got), report.equal, report.runtime_ms);
            }
            for c in &report.cases {
                let key = csv_field(&Value::String(c.key.clone()));
                out += &format!("{cmd},{key},{},{},{},{}\n", csv_field(&c.expected), csv_field(&c.got), c.equal, report.runtime_ms);
            }
            out
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("ASMDPP_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| config(format!("ASMDPP_THREADS={v:?} is not a positive integer")))?;
    positive("ASMDPP_THREADS", n)?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| config(format!("thread pool: {e}")))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(&cli)).and_then(|report| {
        let text = render(&report, cli.format);
        match &cli.output {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(report.equal)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("asmdpp: {e}");
            ExitCode::from(2)
        }
    }
}

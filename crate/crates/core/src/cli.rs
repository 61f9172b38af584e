//! Command-line front end.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dshom::build_ds;
use crate::error::{Error, Result};
use crate::generators::{exc_image_elements, exc_image_membership, gens_hk};
use crate::kackernel::{kac_k, kernel_decompose, sch_kac, LatticeMode};
use crate::rootdata::{iso_set_validate, parse_algebra, AlgebraDatum, IsoSet};
use crate::superring::membership_report;
use crate::verify::{single_root_sets, suite_exceptional, suite_homomorphism, suite_kernel, suite_transfer, VerifyReport};
use crate::weightlat::LaurentPoly;

#[derive(Parser, Debug)]
#[command(name = "superchar", version, about = "Supercharacter rings and the Duflo-Serganova homomorphism")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Algebra,
    Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Transfer,
    Exceptional,
    Kernel,
    Homomorphism,
}

#[derive(clap::Args, Debug)]
pub struct Input {
    /// Polynomial text or JSON; read from standard input when absent.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, conflicts_with = "input")]
    pub input_file: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root data summary.
    Info {
        #[arg(long)]
        algebra: String,
    },
    /// Kernel basis element k(lambda).
    Kac {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Supercharacter of the Kac module K(lambda) for gl and sl.
    Schkac {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Applies ds along a set of isotropic roots.
    Ds {
        #[arg(long)]
        algebra: String,
        /// Roots separated by `;`, e.g. "e2-d1;e1-d2".
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[command(flatten)]
        input: Input,
    },
    /// Membership in the supercharacter ring, or with `--image` in the image of ds.
    Member {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        image: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Expresses a kernel element in the basis k(lambda).
    Decompose {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value = "algebra")]
        mode: Mode,
        #[command(flatten)]
        input: Input,
    },
    /// Generators h_1..h_K, or the named elements of an exceptional algebra.
    Gens {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Runs a property suite over a seeded random corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

/// Successful output, or a mathematical failure carrying a witness.
struct Outcome {
    ok: bool,
    text: String,
    result: Value,
    witness: Option<String>,
}

impl Outcome {
    fn ok(text: String, result: Value) -> Self {
        Outcome { ok: true, text, result, witness: None }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotDivisible
        | Error::NotInKernel(_)
        | Error::NotWInvariant(_)
        | Error::NotSupercharacter(_)
        | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String> {
    if let Some(s) = &input.input {
        return Ok(s.clone());
    }
    let mut buf = String::new();
    match &input.input_file {
        Some(p) => {
            buf = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        None => {
            stdin.read_to_string(&mut buf).map_err(|e| Error::Parse(format!("standard input: {e}")))?;
        }
    }
    Ok(buf)
}

fn poly_value(f: &LaurentPoly) -> Value {
    json!({ "text": f.to_string(), "poly": f.to_json_value() })
}

pub fn parse_roots(a: &AlgebraDatum, roots: &str) -> Result<IsoSet> {
    let list = roots
        .split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| a.parse_root(r))
        .collect::<Result<Vec<_>>>()?;
    iso_set_validate(a, list)
}

fn info(a: &AlgebraDatum) -> Outcome {
    let roots = |v: &[crate::weightlat::Weight]| v.iter().map(|r| a.format_root(r)).collect::<Vec<_>>();
    let result = json!({
        "algebra": a.name(),
        "shape": a.shape().to_string(),
        "even_positive_roots": roots(a.pos_even_roots()),
        "odd_positive_roots": roots(a.pos_odd_roots()),
        "weyl_order": a.weyl_order().to_string(),
        "defect": a.defect(),
        "rho": a.format_root(&a.rho()),
        "rho_iso": a.format_root(a.rho_iso()),
    });
    let text = format!(
        "{}\nshape {}\neven positive roots: {}\nodd positive roots: {}\n|W| = {}\ndefect = {}\nrho = {}\nrho_iso = {}",
        a.name(),
        a.shape(),
        roots(a.pos_even_roots()).join(", "),
        roots(a.pos_odd_roots()).join(", "),
        a.weyl_order(),
        a.defect(),
        a.format_root(&a.rho()),
        a.format_root(a.rho_iso()),
    );
    Outcome::ok(text, result)
}

fn report_outcome(rep: VerifyReport) -> Outcome {
    let text = serde_json::to_string(&rep).expect("report serializes");
    let result = serde_json::to_value(&rep).expect("report serializes");
    Outcome { ok: rep.passed(), text, witness: rep.counterexample.clone(), result }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    match &cli.command {
        Command::Info { algebra } => Ok(info(&parse_algebra(algebra)?)),
        Command::Kac { algebra, lambda } => {
            let a = parse_algebra(algebra)?;
            let k = kac_k(&a, &a.parse_weight(lambda)?)?;
            Ok(Outcome::ok(k.to_string(), poly_value(&k)))
        }
        Command::Schkac { algebra, lambda } => {
            let a = parse_algebra(algebra)?;
            let k = sch_kac(&a, &a.parse_weight(lambda)?)?;
            Ok(Outcome::ok(k.to_string(), poly_value(&k)))
        }
        Command::Ds { algebra, roots, input } => {
            let a = parse_algebra(algebra)?;
            let b = parse_roots(&a, roots)?;
            let f = a.parse_poly(&read_input(input, stdin)?)?;
            let d = build_ds(&a, &b)?;
            let g = d.apply(&f)?;
            let mut result = poly_value(&g);
            result["target"] = json!(d.target().name());
            Ok(Outcome::ok(g.to_string(), result))
        }
        Command::Member { algebra, image, input } => {
            let a = parse_algebra(algebra)?;
            let text = read_input(input, stdin)?;
            if *image {
                let (target, _) = crate::generators::exc_image_generators(&a)?;
                let g = target.parse_poly(&text)?;
                let r = exc_image_membership(&a, &g)?;
                let out = match (&r.expression, &r.remainder) {
                    (Some(e), _) => format!("member: {e}"),
                    (None, Some(rem)) => format!("not a member: remainder {rem}"),
                    (None, None) => "not a member".into(),
                };
                let witness = r.remainder.clone();
                return Ok(Outcome { ok: r.member, text: out, result: serde_json::to_value(&r).unwrap(), witness });
            }
            let f = a.parse_poly(&text)?;
            let r = membership_report(&a, &f)?;
            let out = match &r.witness {
                None => "member".to_string(),
                Some(w) => format!("not a member: {w}"),
            };
            Ok(Outcome { ok: r.is_member(), text: out, witness: r.witness.clone(), result: serde_json::to_value(&r).unwrap() })
        }
        Command::Decompose { algebra, mode, input } => {
            let a = parse_algebra(algebra)?;
            let f = a.parse_poly(&read_input(input, stdin)?)?;
            let mode = match mode {
                Mode::Algebra => LatticeMode::Algebra,
                Mode::Group => LatticeMode::Group,
            };
            let d = kernel_decompose(&a, &f, mode)?;
            let result: Vec<Value> =
                d.coeffs.iter().map(|(l, b)| json!({ "lambda": l.to_string(), "coeff": b.to_string() })).collect();
            let text = if d.coeffs.is_empty() { "0".to_string() } else { d.to_string().trim_end().to_string() };
            Ok(Outcome::ok(text, Value::Array(result)))
        }
        Command::Gens { algebra, order } => {
            let a = parse_algebra(algebra)?;
            let named: Vec<(String, LaurentPoly)> = if a.family().is_exceptional() {
                exc_image_elements(&a)?
            } else {
                gens_hk(&a, *order)?.into_iter().enumerate().map(|(i, h)| (format!("h{}", i + 1), h)).collect()
            };
            let text = named.iter().map(|(n, f)| format!("{n} = {f}")).collect::<Vec<_>>().join("\n");
            let result = Value::Array(named.iter().map(|(n, f)| json!({ "name": n, "value": poly_value(f) })).collect());
            Ok(Outcome::ok(text, result))
        }
        Command::Verify { suite, algebra, roots, seed, order, count } => {
            let a = parse_algebra(algebra)?;
            let rep = match suite {
                Suite::Transfer => suite_transfer(&a, *order, *seed)?,
                Suite::Exceptional => suite_exceptional(&a, *seed, *count)?,
                Suite::Kernel => suite_kernel(&a, *seed, *count)?,
                Suite::Homomorphism => {
                    let b = match roots {
                        Some(r) => parse_roots(&a, r)?,
                        None => single_root_sets(&a)
                            .into_iter()
                            .next()
                            .ok_or_else(|| Error::InvalidIsoSet("no isotropic roots".into()))?,
                    };
                    suite_homomorphism(&a, &b, *seed, *count)?
                }
            };
            Ok(report_outcome(rep))
        }
    }
}

/// Runs one invocation; returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json_mode = cli.format == Format::Json;
    let (code, body) = match execute(&cli, stdin) {
        Ok(o) => {
            let code = if o.ok { 0 } else { 1 };
            if json_mode {
                (code, json!({ "ok": o.ok, "result": o.result, "witness": o.witness }).to_string())
            } else {
                (code, o.text)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if json_mode {
                (code, json!({ "ok": false, "result": Value::Null, "witness": e.to_string() }).to_string())
            } else {
                let _ = writeln!(err, "error: {e}");
                return code;
            }
        }
    };
    let _ = writeln!(out, "{body}");
    code
}

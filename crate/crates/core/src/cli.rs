//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! mathematical check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::calculus::{
    canonical_decomposition, conjecture7_check, derived_seed, direct_sum_is_component, generic_ext,
    orthogonal_set_search, theorem1_witness,
};
use crate::components::{component_dim, mu_g, rng_stream, sample_component_point};
use crate::error::{Error, Result};
use crate::ext::{ext1_dim_cb, ext1_dim_direct};
use crate::json::{
    label_from_json, label_to_json, module_from_json, module_to_json, parse_label_arg, sample_to_json, FORMAT,
};
use crate::leclerc::{default_lambdas, verify_proposition};
use crate::linalg::Field;
use crate::quiver::{DynkinType, Quiver};
use crate::rep::{dim_hom, is_indecomposable, krs_decompose, Representation};
use crate::roots::{ComponentLabel, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "preproj", version, about = "Exact computations with Dynkin quiver and preprojective algebra modules")]
pub struct Cli {
    /// Ground field: q (rationals) or fp:PRIME with PRIME > 2^30.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Samples per generic value.
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordered positive roots of a Dynkin type.
    Roots { ty: String },
    /// dim Hom(A, B) for two module files.
    Hom { a: PathBuf, b: PathBuf },
    /// dim Ext^1(A, B) by cocycles and by the Hom-form identity.
    Ext { a: PathBuf, b: PathBuf },
    /// Indecomposable summands of a module file.
    Decompose { a: PathBuf },
    /// Component label of the forward part of a module over a Dynkin quiver.
    Label { a: PathBuf },
    /// A generic point of the component with the given label.
    Sample { ty: String, alpha: String },
    /// Generic Ext^1 between two components, both orders.
    ComponentExt { ty: String, alpha: String, beta: String },
    /// Generic number of parameters of a component.
    Mu { ty: String, alpha: String },
    /// Whether the closure of the direct sum of two components is a component.
    SumComponent { ty: String, alpha: String, beta: String },
    /// Canonical decomposition of a component.
    Canonical { ty: String, alpha: String },
    /// Ext-orthogonal families among bounded labels.
    Search {
        ty: String,
        #[arg(long, default_value_t = 2)]
        max_sum: u64,
        #[arg(long)]
        max_dim: Option<u64>,
    },
    /// Two multiplicity vectors with equal image for N+1 labels.
    Theorem1 { labels: PathBuf },
    /// Every invariant of the M_lambda family and its projective partners.
    VerifyLeclerc {
        /// Comma-separated parameters, none equal to 0 or 1.
        #[arg(long, default_value = "2,3,5")]
        lambdas: String,
    },
}

struct Outcome {
    report: Value,
    pass: bool,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, pass: true }
}

fn provenance(cli: &Cli, field: Field) -> Value {
    json!({"seed": cli.seed, "samples": cli.samples, "field": field.to_string()})
}

fn chosen_field(cli: &Cli) -> Result<Field> {
    match &cli.field {
        None => Ok(Field::Rationals),
        Some(s) => s.parse(),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_module(cli: &Cli, path: &Path) -> Result<Representation> {
    let m = module_from_json(&read_json(path)?).map_err(|e| match e {
        Error::Input(s) => Error::Input(format!("{}: {s}", path.display())),
        other => other,
    })?;
    if let Some(f) = &cli.field {
        let f: Field = f.parse()?;
        if f != m.field() {
            return Err(Error::FieldMismatch(format!(
                "{} is over {}, but --field {f} was given",
                path.display(),
                m.field()
            )));
        }
    }
    Ok(m)
}

fn root_system(ty: &str) -> Result<RootSystem> {
    let ty: DynkinType = ty.parse()?;
    RootSystem::of_type(ty)
}

/// Root system of the base quiver of a module's algebra.
fn roots_for(m: &Representation) -> Result<RootSystem> {
    let base: &Quiver = &m.algebra().base;
    RootSystem::new(base)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    let samples = cli.samples;
    if samples == 0 {
        return Err(Error::InvalidParameter("--samples must be positive".into()));
    }
    match &cli.command {
        Command::Roots { ty } => {
            let rs = root_system(ty)?;
            let roots: Vec<Value> = (0..rs.len())
                .map(|i| json!({"index": i + 1, "name": rs.root_name(i), "dims": rs.root(i).0}))
                .collect();
            Ok(ok(json!({"format": FORMAT, "type": rs.dynkin_type().to_string(), "count": rs.len(), "roots": roots})))
        }
        Command::Hom { a, b } => {
            let (m, n) = (read_module(cli, a)?, read_module(cli, b)?);
            Ok(ok(json!({"format": FORMAT, "hom": dim_hom(&m, &n)?, "field": m.field().to_string()})))
        }
        Command::Ext { a, b } => {
            let (m, n) = (read_module(cli, a)?, read_module(cli, b)?);
            let direct = ext1_dim_direct(&m, &n)?;
            let cb = match m.algebra().dynkin_preprojective() {
                Some(_) => Some(ext1_dim_cb(&m, &n)?),
                None => None,
            };
            let agree = cb.map(|c| c == direct);
            Ok(Outcome {
                pass: agree != Some(false),
                report: json!({"format": FORMAT, "direct": direct, "cb": cb, "agree": agree,
                               "field": m.field().to_string()}),
            })
        }
        Command::Decompose { a } => {
            let m = read_module(cli, a)?;
            let mut rng = rng_stream(seed, 0);
            let rs = roots_for(&m).ok();
            let mut parts = Vec::new();
            for p in krs_decompose(&m, &mut rng)? {
                let certified = match is_indecomposable(&p) {
                    Ok(b) => Value::Bool(b),
                    Err(Error::NotCertified) => Value::Null,
                    Err(e) => return Err(e),
                };
                let label = match &rs {
                    Some(rs) => json!(rs.gabriel_label(&p, &mut rng)?.0),
                    None => Value::Null,
                };
                parts.push(json!({"dims": p.dims().0, "certified_indecomposable": certified,
                                  "label": label, "module": module_to_json(&p)}));
            }
            Ok(ok(json!({"format": FORMAT, "summands": parts, "provenance": provenance(cli, m.field())})))
        }
        Command::Label { a } => {
            let m = read_module(cli, a)?;
            let rs = roots_for(&m)?;
            let mut rng = rng_stream(seed, 0);
            let l = rs.gabriel_label(&m, &mut rng)?;
            let mut v = label_to_json(&rs, &l);
            v["describe"] = json!(l.describe(&rs));
            v["provenance"] = provenance(cli, m.field());
            Ok(ok(v))
        }
        Command::Sample { ty, alpha } => {
            let rs = root_system(ty)?;
            let a = label_arg(&rs, alpha)?;
            let field = chosen_field(cli)?;
            let s = sample_component_point(&rs, &a, field, seed, 0)?;
            Ok(ok(sample_to_json(&rs, &s)))
        }
        Command::ComponentExt { ty, alpha, beta } => {
            let rs = root_system(ty)?;
            let (a, b) = (label_arg(&rs, alpha)?, label_arg(&rs, beta)?);
            let field = chosen_field(cli)?;
            let ab = generic_ext(&rs, &a, &b, field, samples, derived_seed(seed, 0))?;
            let ba = generic_ext(&rs, &b, &a, field, samples, derived_seed(seed, 1))?;
            Ok(ok(json!({"format": FORMAT, "alpha": a.0, "beta": b.0, "ext_alpha_beta": ab, "ext_beta_alpha": ba,
                         "provenance": provenance(cli, field)})))
        }
        Command::Mu { ty, alpha } => {
            let rs = root_system(ty)?;
            let a = label_arg(&rs, alpha)?;
            let field = chosen_field(cli)?;
            let mu = mu_g(&rs, &a, field, samples, seed)?;
            Ok(ok(json!({"format": FORMAT, "alpha": a.0, "mu": mu, "component_dim": component_dim(&rs, &a),
                         "provenance": provenance(cli, field)})))
        }
        Command::SumComponent { ty, alpha, beta } => {
            let rs = root_system(ty)?;
            let (a, b) = (label_arg(&rs, alpha)?, label_arg(&rs, beta)?);
            let c = direct_sum_is_component(&rs, &a, &b, samples, seed)?;
            Ok(ok(json!({"format": FORMAT, "alpha": a.0, "beta": b.0, "component": c.map(|l| l.0),
                         "provenance": provenance(cli, Field::Rationals)})))
        }
        Command::Canonical { ty, alpha } => {
            let rs = root_system(ty)?;
            let a = label_arg(&rs, alpha)?;
            let cd = canonical_decomposition(&rs, &a, samples, seed)?;
            Ok(Outcome {
                pass: cd.is_determined(),
                report: json!({"format": FORMAT, "decomposition": cd,
                               "provenance": provenance(cli, Field::Rationals)}),
            })
        }
        Command::Search { ty, max_sum, max_dim } => {
            let rs = root_system(ty)?;
            let report = orthogonal_set_search(&rs, *max_sum, *max_dim, samples, seed)?;
            let checks: Vec<Value> = report
                .cliques
                .iter()
                .filter(|c| c.len() == report.max_clique)
                .map(|c| json!(conjecture7_check(&rs, &report.graph, c)))
                .collect();
            Ok(Outcome {
                pass: report.bound_holds,
                report: json!({"format": FORMAT, "type": rs.dynkin_type().to_string(), "search": report,
                               "conjecture7": checks, "provenance": provenance(cli, Field::Rationals)}),
            })
        }
        Command::Theorem1 { labels } => {
            let v = read_json(labels)?;
            let list = match &v {
                Value::Array(a) => a.clone(),
                _ => v
                    .get("labels")
                    .and_then(Value::as_array)
                    .cloned()
                    .ok_or_else(|| Error::Input(format!("{}: expected \"labels\": [...]", labels.display())))?,
            };
            let labels: Vec<ComponentLabel> = list
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let at = format!("labels[{i}]");
                    match x {
                        Value::Array(_) => serde_json::from_value(x.clone()).map_err(|e| Error::Input(format!("{at}: {e}"))),
                        _ => x
                            .get("alpha")
                            .cloned()
                            .ok_or_else(|| Error::Input(format!("{at}: missing alpha")))
                            .and_then(|a| serde_json::from_value(a).map_err(|e| Error::Input(format!("{at}: {e}")))),
                    }
                })
                .collect::<Result<_>>()?;
            let w = theorem1_witness(&labels)?;
            Ok(Outcome {
                pass: w.verify(),
                report: json!({"format": FORMAT, "witness": w, "verified": w.verify()}),
            })
        }
        Command::VerifyLeclerc { lambdas } => {
            let ls = parse_lambdas(lambdas)?;
            let report = verify_proposition(&ls, seed, samples)?;
            Ok(Outcome {
                pass: report.pass,
                report: serde_json::to_value(&report)?,
            })
        }
    }
}

fn parse_lambdas(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Ok(default_lambdas());
    }
    s.split(',')
        .map(|x| match Field::Rationals.parse(x)? {
            crate::linalg::Scalar::Rational(q) => Ok(q),
            _ => unreachable!("rational field parses to rationals"),
        })
        .collect()
}

/// `path<TAB>value` lines for every leaf of a JSON value.
pub fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(o) => {
                for (k, x) in o {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => {
                out.push_str(prefix);
                out.push('\t');
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SplittingStalled { .. } | Error::NotCertified => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the report to `stdout` (or `--out`). Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n",
        Format::Table => render_table(&outcome.report),
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if outcome.pass {
        0
    } else {
        let _ = writeln!(stderr, "a check failed");
        1
    }
}

/// A label argument: a file holding label JSON, or anything accepted by
/// [`parse_label_arg`].
fn label_arg(rs: &RootSystem, s: &str) -> Result<ComponentLabel> {
    let p = Path::new(s);
    if p.is_file() {
        return label_from_json(rs, &read_json(p)?, &p.display().to_string());
    }
    parse_label_arg(rs, s)
}

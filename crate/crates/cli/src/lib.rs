//! Command-line front end: argument parsing, dispatch and report formatting.

pub mod dsl;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zdinf_core::{
    almost_split, decompose, decompose_with_seed, dot_export, ext_space, filtration, format_sum, hom_space,
    json_export, quiver_window_over, serre_check, singularity_index, CObject, CatalogSpec, FieldSpec, IndecLabel,
};

pub use dsl::{parse_expr, parse_object, ObjectExpr};

/// Version of every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("range error: {0}")]
    Range(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] zdinf_core::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(zdinf_core::Error::Parse(_) | zdinf_core::Error::InvalidField(_)) => 2,
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "zdinf", version, about = "Hom, Ext, Serre duality and AR theory for graded lattices with torsion")]
pub struct Cli {
    /// Q or Fp:<p>
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Output format; `dot` applies to `quiver` only.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim Hom(A, B)
    Hom { a: String, b: String },
    /// dim Ext¹(A, B)
    Ext { a: String, b: String },
    /// dim Hom(A, B) - dim Ext¹(A, B)
    Euler { a: String, b: String },
    /// Check dim Hom(X,Y) = dim Ext¹(Y,VX) and the pairing over a catalog
    Serre {
        /// e.g. "m<=3,n<=3,|a|<=2"
        #[arg(long, default_value = "m<=4,n<=4,|a|<=3")]
        catalog: String,
    },
    /// The Serre functor V = σ(-)(-1) on an object
    Translate { a: String },
    /// Krull–Schmidt decomposition
    Decompose {
        a: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// A filtration with rank-one subquotients of a torsion-free object
    Filtration { a: String },
    /// The almost split sequence ending in an indecomposable
    Ars { a: String },
    /// A window of the Auslander–Reiten quiver
    Quiver {
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        a_min: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        a_max: i64,
        #[arg(long, default_value_t = 0)]
        n_max: u32,
    },
    /// Least m making a torsion-free object an R_m-module
    Index { a: String },
    /// Quick internal consistency checks
    Selftest {
        #[arg(long, default_value_t = zdinf_core::decomp::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match run(&cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))
}

fn labels_json(labels: &[IndecLabel]) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

struct Arg {
    expr: ObjectExpr,
    obj: CObject,
}

fn arg(text: &str, field: FieldSpec) -> Result<Arg, CliError> {
    let expr = parse_expr(text, field)?;
    let obj = expr.object(field)?;
    Ok(Arg { expr, obj })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let k = cli.field;
    let json = cli.format == Format::Json;
    if cli.format == Format::Dot && !matches!(cli.command, Command::Quiver { .. }) {
        return Err(CliError::Input("--format dot is only available for `quiver`".into()));
    }
    let out = match &cli.command {
        Command::Hom { a, b } | Command::Ext { a, b } | Command::Euler { a, b } => {
            let (x, y) = (arg(a, k)?, arg(b, k)?);
            let hom = hom_space(&x.obj, &y.obj)?.dim();
            let ext = ext_space(&x.obj, &y.obj)?.dim();
            let (kind, value) = match &cli.command {
                Command::Hom { .. } => ("hom", hom as i64),
                Command::Ext { .. } => ("ext", ext as i64),
                _ => ("euler", hom as i64 - ext as i64),
            };
            if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": kind,
                    "a": x.expr.to_string(),
                    "b": y.expr.to_string(),
                    "hom": hom,
                    "ext": ext,
                    "value": value,
                }))
            } else {
                match kind {
                    "hom" => format!("dim Hom({}, {}) = {hom}\n", x.expr, y.expr),
                    "ext" => format!("dim Ext¹({}, {}) = {ext}\n", x.expr, y.expr),
                    _ => format!("χ({}, {}) = {value} (hom {hom}, ext {ext})\n", x.expr, y.expr),
                }
            }
        }
        Command::Serre { catalog } => return serre_sweep(k, catalog, json),
        Command::Translate { a } => {
            let x = arg(a, k)?;
            let d = decompose(&x.obj)?;
            let mut t: Vec<IndecLabel> = d.factors.iter().map(IndecLabel::serre_twist).collect();
            t.sort();
            if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "object": x.expr.to_string(),
                    "translate": labels_json(&t),
                }))
            } else {
                format!("V({}) = {}\n", x.expr, format_sum(&t))
            }
        }
        Command::Decompose { a, seed } => {
            let x = arg(a, k)?;
            let d = match seed {
                Some(s) => decompose_with_seed(&x.obj, *s)?,
                None => decompose(&x.obj)?,
            };
            if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "object": x.expr.to_string(),
                    "factors": labels_json(&d.factors),
                }))
            } else {
                format!("{} ≅ {}\n", x.expr, format_sum(&d.factors))
            }
        }
        Command::Filtration { a } => {
            let x = arg(a, k)?;
            let steps = filtration(&x.obj)?;
            let mut subs = Vec::new();
            for s in &steps {
                subs.push(format_sum(&decompose(&s.sub)?.factors));
            }
            if json {
                let rows: Vec<_> = steps
                    .iter()
                    .zip(&subs)
                    .map(|(s, sub)| json!({"sub": sub, "factor": s.factor.to_string()}))
                    .collect();
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "object": x.expr.to_string(),
                    "steps": rows,
                }))
            } else {
                let mut s = String::new();
                for (i, (st, sub)) in steps.iter().zip(&subs).enumerate() {
                    writeln!(s, "F_{} = {sub}    F_{}/F_{} = {}", i + 1, i + 1, i, st.factor).unwrap();
                }
                s
            }
        }
        Command::Ars { a } => {
            let x = arg(a, k)?;
            let s = almost_split(&x.obj)?;
            if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "left": s.left.to_string(),
                    "middle": labels_json(&s.middle),
                    "right": s.right.to_string(),
                }))
            } else {
                format!("{s}\n")
            }
        }
        Command::Quiver {
            m_max,
            a_min,
            a_max,
            n_max,
        } => {
            let w = quiver_window_over(k, *m_max, *a_min, *a_max, *n_max)?;
            if json {
                pretty(&json_export(&w))
            } else {
                dot_export(&w)
            }
        }
        Command::Index { a } => {
            let x = arg(a, k)?;
            let m = singularity_index(&x.obj)?;
            if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "object": x.expr.to_string(),
                    "index": m,
                }))
            } else {
                format!("singularity index of {} = {m}\n", x.expr)
            }
        }
        Command::Selftest { seed } => return Ok(selftest::run(k, *seed, json)),
    };
    Ok(Outcome::ok(out))
}

fn serre_sweep(k: FieldSpec, catalog: &str, json: bool) -> Result<Outcome, CliError> {
    let spec: CatalogSpec = catalog.parse()?;
    let objs = spec.objects(k);
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for (lx, x) in &objs {
        for (ly, y) in &objs {
            pairs += 1;
            let r = serre_check(x, y)?;
            if !r.pass {
                failures.push((lx.to_string(), ly.to_string(), r));
            }
        }
    }
    let stdout = if json {
        let f: Vec<_> = failures
            .iter()
            .map(|(a, b, r)| json!({"x": a, "y": b, "report": r}))
            .collect();
        pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "catalog": spec.to_string(),
            "objects": objs.len(),
            "pairs": pairs,
            "passed": pairs - failures.len(),
            "failures": f,
        }))
    } else {
        let mut s = String::new();
        for (a, b, r) in &failures {
            writeln!(
                s,
                "FAIL ({a}, {b}): hom {}, ext {}, gram rank {:?}",
                r.hom_dim, r.ext_dim, r.gram_rank
            )
            .unwrap();
        }
        writeln!(
            s,
            "serre {spec}: {} objects, {pairs} pairs, {} passed",
            objs.len(),
            pairs - failures.len()
        )
        .unwrap();
        s
    };
    Ok(Outcome {
        code: i32::from(!failures.is_empty()),
        stdout,
        stderr: String::new(),
    })
}

mod selftest;

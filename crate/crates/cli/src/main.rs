use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bfwalsh_core::constructions::{build, ConstructionKind, ConstructionReport, Inputs};
use bfwalsh_core::gf2n::{default_poly, Field, FieldConfig};
use bfwalsh_core::reproduce::{reproduce, ExampleOutcome};
use bfwalsh_core::sweep::{check_size, max_n_from_env, run_sweep, SweepConfig, SweepMode, SweepSummary};
use bfwalsh_core::{Distribution, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bfwalsh",
    version,
    about = "Walsh spectra of bent, semi-bent and five-valued constructions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rebuild a worked example and compare with its golden values.
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        example: u8,
        #[command(flatten)]
        out: Output,
    },
    /// Build one construction and report predicted vs. measured spectrum.
    Analyze(RunArgs),
    /// Tally a construction over many parameter choices.
    Sweep(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Builtin name (`gf2^8`, `gf256`) or path to a field JSON file.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    construction: String,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    u1: Option<String>,
    #[arg(long)]
    u2: Option<String>,
    #[arg(long)]
    v1: Option<String>,
    #[arg(long)]
    v2: Option<String>,
    #[arg(long)]
    r1: Option<String>,
    #[arg(long)]
    r2: Option<String>,
    /// Half degree; picks the field when --field is absent.
    #[arg(long)]
    m: Option<u32>,
    /// Gold/Niho `k`, or the Frobenius power of the linearized permutation.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Keep sampling until each condition pattern is seen this often.
    #[arg(long)]
    min_per_pattern: Option<u64>,
    #[command(flatten)]
    out: Output,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn builtin_degree(name: &str) -> Option<u32> {
    if let Some(n) = name.strip_prefix("gf2^") {
        return n.parse().ok();
    }
    let size: u64 = name.strip_prefix("gf")?.parse().ok()?;
    size.is_power_of_two().then(|| size.trailing_zeros())
}

fn resolve_field(a: &RunArgs, kind: ConstructionKind) -> Result<Arc<Field>, Failure> {
    let field = match (&a.field, a.m) {
        (Some(name), _) => match builtin_degree(name) {
            Some(n) => {
                let poly = default_poly(n).ok_or_else(|| Failure::Usage(format!("no builtin field of degree {n}")))?;
                Field::new(n, poly)?
            }
            None => FieldConfig::load(Path::new(name))?.build()?,
        },
        (None, Some(m)) => Field::standard(if kind.is_bivariate() { m } else { 2 * m })?,
        (None, None) => return Err(Failure::Usage("give --field or --m".into())),
    };
    if let Some(m) = a.m {
        let expect = if kind.is_bivariate() { m } else { 2 * m };
        if field.n() != expect {
            return Err(Failure::Usage(format!(
                "--m {m} does not match a field of degree {}",
                field.n()
            )));
        }
    }
    Ok(Arc::new(field))
}

fn inputs(field: &Field, a: &RunArgs) -> Result<Inputs, Failure> {
    let p = |s: &Option<String>| -> Result<_, Failure> { Ok(s.as_deref().map(|s| field.parse_elem(s)).transpose()?) };
    Ok(Inputs {
        lambda: p(&a.lambda)?,
        u: p(&a.u)?,
        v: p(&a.v)?,
        r: p(&a.r)?,
        u1: p(&a.u1)?,
        u2: p(&a.u2)?,
        v1: p(&a.v1)?,
        v2: p(&a.v2)?,
        r1: p(&a.r1)?,
        r2: p(&a.r2)?,
        k: a.k,
        s: a.s,
    })
}

fn emit(out: &Output, json: &Value, csv: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(json).expect("json") + "\n",
        Format::Csv => csv(),
    };
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `value:count` pairs, largest value first.
fn flatten_distribution(d: &Distribution) -> String {
    d.iter()
        .rev()
        .map(|(v, c)| format!("{v}:{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn bits(c: &[u8]) -> String {
    c.iter().map(|b| b.to_string()).collect()
}

fn with_seed(mut v: Value, seed: u64) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("seed".into(), json!(seed));
    }
    v
}

fn report_csv(reports: &[ConstructionReport], seed: u64) -> String {
    let mut s = String::from("construction,seed,conditions,predicted,measured,distribution,degree,balanced,match\n");
    for r in reports {
        s += &format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.construction,
            seed,
            bits(&r.conditions),
            r.predicted.class,
            r.measured.class,
            flatten_distribution(&r.measured.distribution),
            r.degree,
            r.measured.balanced,
            r.matches
        );
    }
    s
}

fn cmd_reproduce(id: u8, out: &Output) -> Result<(), Failure> {
    let o: ExampleOutcome = reproduce(id)?;
    for c in o.failures() {
        eprintln!(
            "example {id}: {} expected {} measured {}",
            c.name, c.expected, c.measured
        );
    }
    let v = with_seed(serde_json::to_value(&o).expect("json"), out.seed);
    emit(out, &v, || {
        let mut s = String::from("example,seed,check,expected,measured,ok\n");
        for c in &o.checks {
            let cell = |v: &Value| match v {
                Value::Object(m) if c.name.ends_with("distribution") => {
                    let d: Distribution = m
                        .iter()
                        .filter_map(|(k, v)| Some((k.parse().ok()?, v.as_u64()?)))
                        .collect();
                    flatten_distribution(&d)
                }
                other => other.to_string().replace(',', ";").replace('"', ""),
            };
            s += &format!(
                "{id},{},{},{},{},{}\n",
                out.seed,
                c.name,
                cell(&c.expected),
                cell(&c.measured),
                c.ok
            );
        }
        s
    })?;
    if o.passed {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_analyze(a: &RunArgs) -> Result<(), Failure> {
    let kind: ConstructionKind = a.construction.parse()?;
    let field = resolve_field(a, kind)?;
    check_size(kind.domain(&field).n_vars(), max_n_from_env()?)?;
    let report = build(kind, &field, &inputs(&field, a)?)?.report()?;
    let mut v = with_seed(serde_json::to_value(&report).expect("json"), a.out.seed);
    v["field"] = json!(field.config());
    let seed = a.out.seed;
    let ok = report.matches;
    emit(&a.out, &v, || report_csv(&[report], seed))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn sweep_csv(s: &SweepSummary) -> String {
    let mut out = String::from("construction,mode,seed,category,key,count\n");
    let mut row = |cat: &str, key: &str, n: u64| {
        out += &format!("{},{},{},{cat},{key},{n}\n", s.construction, s.mode, s.seed);
    };
    row("total", "samples", s.samples);
    row("total", "mismatches", s.mismatches);
    row("total", "semibent", s.semibent);
    if let Some(p) = s.predicted_semibent_pairs {
        row("total", "predicted_semibent_pairs", p);
    }
    if let Some(l) = &s.lambda_scan {
        row("lambda_scan", "valid", l.valid);
        row("lambda_scan", "permutations", l.permutations);
    }
    for (k, n) in &s.by_class {
        row("class", k, *n);
    }
    for (k, n) in &s.by_pattern {
        row("pattern", k, *n);
    }
    out
}

fn cmd_sweep(a: &RunArgs) -> Result<(), Failure> {
    let kind: ConstructionKind = a.construction.parse()?;
    let mode: SweepMode = a
        .sweep
        .as_deref()
        .ok_or_else(|| Failure::Usage("--sweep is required".into()))?
        .parse()?;
    let field = resolve_field(a, kind)?;
    let mut base = inputs(&field, a)?;
    (base.u, base.v, base.r) = (None, None, None);
    let cfg = SweepConfig {
        kind,
        base,
        mode,
        seed: a.out.seed,
        jobs: a.jobs,
        min_per_pattern: a.min_per_pattern,
        max_n: max_n_from_env()?,
    };
    let summary = run_sweep(&field, &cfg)?;
    let v = serde_json::to_value(&summary).expect("json");
    emit(&a.out, &v, || sweep_csv(&summary))?;
    if summary.mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Reproduce { example, out } => cmd_reproduce(*example, out),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

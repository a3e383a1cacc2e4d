//! Batch front end: every subcommand computes a report, renders it as JSON
//! or CSV, and maps the outcome to an exit status.
//!
//! Exit statuses: 0 when every check passes, 1 on check failures, 2 on
//! usage or parse errors, 3 when a resource cap is hit.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, CrossedAlgebra, CrossedAlgebraData};
use crate::groups::{make_group, FiniteGroup, GroupError};
use crate::hurwitz::grothendieck::compare_hurwitz_grothendieck;
use crate::hurwitz::{ambient_size, component_orbits, hurwitz_space_orbits, ColorSignature, HurwitzError};
use crate::operad::{check_operad_axioms, Bounds, OperadError, Pi0Operad};
use crate::trees::{check_all_relations, TreeError};

pub const JOBS_ENV: &str = "LITTLE_BUNDLES_JOBS";

#[derive(Debug, Parser)]
#[command(name = "little-bundles", version, about = "Hurwitz orbits, relation suites and coherence checks for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Group: C<n>, S<n>, D<n>, products like C2xC2, or a table file.
    #[arg(long, global = true, default_value = "C1")]
    pub group: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = JOBS_ENV, default_value_t = 0)]
    pub jobs: usize,
    /// Recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `arity=3,order=6,cap=1000000`
    #[arg(long, global = true, default_value = "arity=3,order=6,cap=1000000")]
    pub bounds: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    /// Component of a color signature under the labeled braid action.
    Component,
    /// All of `Σ_r × G^r` under braids and global conjugation.
    Hurwitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    Operad,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Interpret the braiding by the inverse crossing on one side.
    Braiding,
    /// Compose without premultiplying inner labels.
    Labels,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit decomposition of a braid action.
    Orbits {
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// `g=[1,1];h=0`; implies the component space.
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, value_enum)]
        space: Option<Space>,
    },
    /// Relation suite and operad axioms.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
    },
    /// Grothendieck construction against the direct presentation.
    Grothendieck {
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Coherence of braided crossed data, or a search for it.
    Coherence {
        /// JSON data file.
        data: Option<PathBuf>,
        /// Use the strict example built from the group.
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// Enumerate every scalar assignment on the object tables.
        #[arg(long)]
        solve: bool,
        /// Scalar group `C<m>` or `Z<m>`.
        #[arg(long, default_value = "C2")]
        scalars: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Group,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hurwitz(HurwitzError::CapExceeded { .. })
            | CliError::Operad(OperadError::CapExceeded { .. } | OperadError::OrderTooLarge { .. } | OperadError::ArityTooLarge(_))
            | CliError::Algebra(AlgebraError::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// A rendered report and whether every check in it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

struct Report {
    json: Value,
    csv: String,
    passed: bool,
}

/// Runs the command on a pool of `--jobs` threads.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = pool.install(|| dispatch(cli))?;
    let text = match cli.common.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json values serialize") + "\n",
        Format::Csv => report.csv,
    };
    Ok(Outcome {
        report: text,
        passed: report.passed,
    })
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    let bounds: Bounds = c.bounds.parse()?;
    match &cli.command {
        Command::Orbits { r, signature, space } => orbits(c, &bounds, *r, signature.as_deref(), *space),
        Command::Check { suite, mutate } => check(c, &bounds, *suite, *mutate),
        Command::Grothendieck { r } => grothendieck(c, &bounds, *r),
        Command::Coherence {
            data,
            builtin,
            solve,
            scalars,
        } => coherence(c, &bounds, data.as_ref(), builtin.is_some(), *solve, scalars),
    }
}

fn header(c: &Common, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("group".into(), json!(c.group));
    m.insert("seed".into(), json!(c.seed));
    m
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(out: &mut String, fields: &[String]) {
    let row: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

fn check_cap(g: &FiniteGroup, r: usize, bounds: &Bounds) -> Result<(), CliError> {
    let size = ambient_size(g, r).unwrap_or(u128::MAX);
    if size > bounds.cap as u128 {
        return Err(HurwitzError::CapExceeded {
            size,
            cap: bounds.cap as u128,
        }
        .into());
    }
    Ok(())
}

fn orbits(c: &Common, bounds: &Bounds, r: usize, signature: Option<&str>, space: Option<Space>) -> Result<Report, CliError> {
    let g = make_group(&c.group)?;
    let signature: Option<ColorSignature> = signature.map(str::parse).transpose()?;
    let space = space.unwrap_or(if signature.is_some() { Space::Component } else { Space::Hurwitz });
    let (r, decomposition, sig_text) = match space {
        Space::Hurwitz => {
            if signature.is_some() {
                return Err(CliError::Usage("--signature applies to the component space".into()));
            }
            check_cap(&g, r, bounds)?;
            (r, hurwitz_space_orbits(&g, r, true), Value::Null)
        }
        Space::Component => {
            let sig = match signature {
                Some(s) => s,
                None => ColorSignature::new(vec![g.identity(); r], g.identity()),
            };
            for &e in sig.inputs.iter().chain([&sig.output]) {
                if e.index() >= g.order() {
                    return Err(HurwitzError::ForeignElement(e).into());
                }
            }
            let r = sig.arity();
            check_cap(&g, r, bounds)?;
            (r, component_orbits(&g, &sig, true), json!(sig.to_string()))
        }
    };
    let mut json = header(c, "orbits");
    json.insert("space".into(), json!(format!("{space:?}").to_lowercase()));
    json.insert("r".into(), json!(r));
    json.insert("signature".into(), sig_text);
    json.insert("objects".into(), json!(decomposition.total()));
    json.insert("orbits".into(), json!(decomposition.count()));
    json.insert("orbit_sizes".into(), json!(decomposition.sizes()));
    let reps: Vec<String> = decomposition.representatives().iter().map(|x| x.to_string()).collect();
    json.insert("representatives".into(), json!(reps));

    let mut csv = String::new();
    csv_row(&mut csv, &["orbit".into(), "size".into(), "representative".into()]);
    for (i, (size, rep)) in decomposition.sizes().iter().zip(&reps).enumerate() {
        csv_row(&mut csv, &[i.to_string(), size.to_string(), rep.clone()]);
    }
    Ok(Report {
        json: Value::Object(json),
        csv,
        passed: true,
    })
}

fn check(c: &Common, bounds: &Bounds, suite: Suite, mutate: Option<Mutation>) -> Result<Report, CliError> {
    let g = make_group(&c.group)?;
    let mut json = header(c, "check");
    json.insert("bounds".into(), json!(bounds.to_string()));
    json.insert("mutation".into(), json!(mutate.map(|m| format!("{m:?}").to_lowercase())));
    let mut csv = String::new();
    csv_row(&mut csv, &["suite".into(), "check".into(), "instances".into(), "failures".into(), "first_failure".into()]);
    let mut passed = true;

    if matches!(suite, Suite::Relations | Suite::All) {
        let reports = check_all_relations(&g, mutate == Some(Mutation::Braiding))?;
        for r in &reports {
            passed &= r.passed();
            let first = r
                .failures
                .first()
                .map(|f| format!("{:?}: {}", f.assignment, f.reason))
                .unwrap_or_default();
            csv_row(
                &mut csv,
                &["relations".into(), r.relation.clone(), r.assignments_checked.to_string(), r.failures.len().to_string(), first],
            );
        }
        json.insert("relations".into(), to_value(&reports));
    }
    if matches!(suite, Suite::Operad | Suite::All) {
        let model = Pi0Operad::new(&g, mutate == Some(Mutation::Labels));
        let reports = check_operad_axioms(&model, bounds)?;
        for r in &reports {
            passed &= r.passed();
            let first = r.failures.first().cloned().unwrap_or_default();
            csv_row(
                &mut csv,
                &["operad".into(), r.axiom.clone(), r.instances.to_string(), r.failure_count.to_string(), first],
            );
        }
        json.insert("operad".into(), to_value(&reports));
    }
    json.insert("passed".into(), json!(passed));
    Ok(Report {
        json: Value::Object(json),
        csv,
        passed,
    })
}

fn grothendieck(c: &Common, bounds: &Bounds, r: usize) -> Result<Report, CliError> {
    let g = make_group(&c.group)?;
    check_cap(&g, r, bounds)?;
    let report = compare_hurwitz_grothendieck(&g, r)?;
    let mut json = header(c, "grothendieck");
    json.insert("r".into(), json!(r));
    json.insert("comparison".into(), to_value(&report));
    json.insert("passed".into(), json!(report.matches()));
    let mut csv = String::new();
    csv_row(&mut csv, &["check".into(), "checked".into(), "match".into()]);
    for (name, n, ok) in [
        ("object_bijection", report.objects, report.object_bijection),
        ("generator_correspondence", report.generators_checked, report.generator_correspondence),
        ("composition_law", report.pairs_checked, report.composition_law),
    ] {
        csv_row(&mut csv, &[name.into(), n.to_string(), ok.to_string()]);
    }
    Ok(Report {
        json: Value::Object(json),
        csv,
        passed: report.matches(),
    })
}

fn parse_scalars(text: &str) -> Result<u32, CliError> {
    let digits = text.trim().trim_start_matches(['C', 'Z']);
    match digits.parse::<u32>() {
        Ok(m) if m > 0 => Ok(m),
        _ => Err(CliError::Usage(format!("scalar group `{text}`: expected C<m> or Z<m> with m > 0"))),
    }
}

fn coherence(
    c: &Common,
    bounds: &Bounds,
    data: Option<&PathBuf>,
    builtin: bool,
    solve: bool,
    scalars: &str,
) -> Result<Report, CliError> {
    let modulus = parse_scalars(scalars)?;
    let alg = match (data, builtin) {
        (Some(_), true) => return Err(CliError::Usage("give either a data file or --builtin, not both".into())),
        (Some(path), false) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            CrossedAlgebra::new(CrossedAlgebraData::from_json(&text)?)?
        }
        (None, _) => algebra::builtin_group_example(&c.group, modulus)?,
    };
    let mut json = header(c, "coherence");
    json.insert("group".into(), json!(alg.data.group));
    json.insert("modulus".into(), json!(alg.data.modulus));
    json.insert("objects".into(), json!(alg.objects()));
    let mut csv = String::new();

    let passed = if solve {
        let solutions = algebra::solve_coherence(&alg, bounds.cap)?;
        let mut reverified = true;
        let mut flat = Vec::with_capacity(solutions.len());
        for s in &solutions {
            reverified &= algebra::check_coherence(s)?.iter().all(|r| r.passed());
            flat.push(s.data.scalars.flatten());
        }
        json.insert("variables".into(), json!(alg.variable_count()));
        json.insert("solutions".into(), json!(solutions.len()));
        json.insert("reverified".into(), json!(reverified));
        json.insert("scalar_tables".into(), json!(flat));
        csv_row(&mut csv, &["solution".into(), "scalars".into()]);
        for (i, v) in flat.iter().enumerate() {
            let mut s = String::new();
            for x in v {
                let _ = write!(s, "{x}");
            }
            csv_row(&mut csv, &[i.to_string(), s]);
        }
        reverified
    } else {
        let reports = algebra::check_coherence(&alg)?;
        csv_row(&mut csv, &["relation".into(), "instances".into(), "failures".into(), "first_failure".into()]);
        for r in &reports {
            let first = r
                .failures
                .first()
                .map(|f| format!("objects {:?} labels {:?}: {} vs {}", f.objects, f.labels, f.lhs, f.rhs))
                .unwrap_or_default();
            csv_row(&mut csv, &[r.relation.clone(), r.assignments_checked.to_string(), r.failures.len().to_string(), first]);
        }
        let passed = reports.iter().all(|r| r.passed());
        json.insert("relations".into(), to_value(&reports));
        passed
    };
    json.insert("passed".into(), json!(passed));
    Ok(Report {
        json: Value::Object(json),
        csv,
        passed,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let mut full = vec!["little-bundles"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    fn field(out: &Outcome, key: &str) -> Value {
        serde_json::from_str::<Value>(&out.report).unwrap()[key].clone()
    }

    #[test]
    fn trivial_group_has_one_orbit() {
        let out = run_args(&["orbits", "--group", "C1", "--r", "3"]).unwrap();
        assert_eq!(field(&out, "orbits"), json!(1));
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn component_of_c2() {
        let out = run_args(&["orbits", "--group", "C2", "--r", "2", "--signature", "g=[1,1];h=0"]).unwrap();
        assert_eq!(field(&out, "orbits"), json!(2));
        assert_eq!(field(&out, "space"), json!("component"));
        assert_eq!(field(&out, "seed"), json!(0));
    }

    #[test]
    fn reports_are_reproducible() {
        let args = ["orbits", "--group", "S3", "--r", "2", "--seed", "7", "--format", "csv"];
        assert_eq!(run_args(&args).unwrap(), run_args(&args).unwrap());
    }

    #[test]
    fn mutated_relations_fail() {
        let out = run_args(&["check", "--group", "C2", "--suite", "relations", "--mutate", "braiding"]).unwrap();
        assert_eq!(out.exit_code(), 1);
        let out = run_args(&["check", "--group", "C1", "--suite", "operad"]).unwrap();
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn error_codes() {
        let err = run_args(&["orbits", "--group", "Q8"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run_args(&["orbits", "--group", "S3", "--r", "6", "--bounds", "cap=1000"]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let err = run_args(&["check", "--group", "C2", "--suite", "operad", "--bounds", "cap=10"]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn coherence_commands() {
        let out = run_args(&["coherence", "--builtin", "group", "--group", "S3"]).unwrap();
        assert_eq!(out.exit_code(), 0);
        let out = run_args(&["coherence", "--solve", "--group", "C2", "--scalars", "C2"]).unwrap();
        assert_eq!(field(&out, "reverified"), json!(true));
    }
}

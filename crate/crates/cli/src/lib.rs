//! Front end for the `f2g` binary: group ingestion, mode dispatch and report
//! output. [`run`] returns the process exit code.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use f2g::group::GroupTable;
use f2g::groupspec::{Family, GroupSpec, Params};
use f2g::involution::{classical_involution, find_theorem1_instance, make_theorem2_instance, odot_involution};
use f2g::theorems::TheoremError;
use f2g::unitgroup::{canonical_generators, enumerate_normalized_units, enumerate_unitary, UnitError, MATERIALIZE_LIMIT};
use f2g::{
    parse_group_spec, verify_theorem1, verify_theorem2, DecompositionReport, ExhaustiveBound, GroupAlgebra,
    GroupSpecError, HypothesisError, InvolutionKind, VerifyOptions,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Orders and canonical generators of V and V_sigma.
    Enumerate,
    /// Build and check the factors without the brute-force comparison.
    Construct,
    /// Build, check, and compare with the enumerated unitary subgroup.
    Verify,
    /// Run every built-in instance.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cyclic,
    Dihedral,
    Quaternion,
    InvertingExtension,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "f2g", version, about = "Unitary subgroups of F2[G] for finite 2-groups")]
pub struct RunConfig {
    /// JSON group description file.
    #[arg(long, conflicts_with_all = ["family", "order"])]
    pub group: Option<PathBuf>,

    #[arg(long, value_enum, requires = "order")]
    pub family: Option<FamilyArg>,

    #[arg(long)]
    pub order: Option<usize>,

    /// Label of b² for an inverting extension (defaults to the involution of the cyclic base).
    #[arg(long)]
    pub square_element: Option<String>,

    #[arg(long, default_value = "classical")]
    pub involution: InvolutionKind,

    #[arg(long, value_enum, default_value_t = Mode::Verify)]
    pub mode: Mode,

    /// Largest group order enumerated exhaustively.
    #[arg(long, default_value_t = 16)]
    pub max_exhaustive_order: usize,

    /// Worker threads (0 = available parallelism).
    #[arg(long, env = "F2G_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Include wall-clock time in reports.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Spec(#[from] GroupSpecError),
    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(#[from] HypothesisError),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        // A missing complement refutes a decomposition rather than the input.
        match self {
            CliError::Theorem(TheoremError::Complement(_)) => EXIT_FAIL,
            _ => EXIT_INVALID,
        }
    }
}

/// What a run produced: the rendered artifact or an error message, and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
    pub error: Option<String>,
}

impl Outcome {
    fn ok(exit_code: i32, output: String) -> Self {
        Self { exit_code, output, error: None }
    }
}

/// Built-in instances, in the order they are run.
pub fn catalog() -> Vec<(String, GroupSpec, InvolutionKind)> {
    use InvolutionKind::{Classical, Odot};
    let fam = GroupSpec::family;
    let product = |a: GroupSpec, b: GroupSpec| GroupSpec::Family {
        family: Family::DirectProduct,
        params: Params { factors: Some(vec![a, b]), ..Params::default() },
    };
    let extension = |base: GroupSpec, t: &str| GroupSpec::Family {
        family: Family::InvertingExtension,
        params: Params { base: Some(Box::new(base)), square_element: Some(t.to_string()), ..Params::default() },
    };
    vec![
        ("Q8".into(), fam(Family::Quaternion, 8), Classical),
        ("Q16".into(), fam(Family::Quaternion, 16), Classical),
        (
            "(C4xC2):C2".into(),
            extension(product(fam(Family::Cyclic, 4), fam(Family::Cyclic, 2)), "(a^2,1)"),
            Classical,
        ),
        ("C8:C2".into(), extension(fam(Family::Cyclic, 8), "a^4"), Classical),
        ("D8".into(), fam(Family::Dihedral, 8), Odot),
        ("Q8".into(), fam(Family::Quaternion, 8), Odot),
        ("D8xC2".into(), product(fam(Family::Dihedral, 8), fam(Family::Cyclic, 2)), Odot),
        ("Q8xC2".into(), product(fam(Family::Quaternion, 8), fam(Family::Cyclic, 2)), Odot),
        ("D8xC4".into(), product(fam(Family::Dihedral, 8), fam(Family::Cyclic, 4)), Odot),
    ]
}

fn spec_from_flags(config: &RunConfig) -> Result<GroupSpec, CliError> {
    let family = config.family.ok_or_else(|| CliError::Usage("give --group <file> or --family with --order".into()))?;
    let order = config.order.ok_or_else(|| CliError::Usage("--family needs --order".into()))?;
    if config.square_element.is_some() && family != FamilyArg::InvertingExtension {
        return Err(CliError::Usage("--square-element only applies to inverting_extension".into()));
    }
    Ok(match family {
        FamilyArg::Cyclic => GroupSpec::family(Family::Cyclic, order),
        FamilyArg::Dihedral => GroupSpec::family(Family::Dihedral, order),
        FamilyArg::Quaternion => GroupSpec::family(Family::Quaternion, order),
        FamilyArg::InvertingExtension => {
            if order < 4 {
                return Err(CliError::Usage("inverting_extension needs --order of at least 4".into()));
            }
            let base = order / 2;
            let t = config.square_element.clone().unwrap_or_else(|| format!("a^{}", base / 2));
            GroupSpec::Family {
                family: Family::InvertingExtension,
                params: Params {
                    base: Some(Box::new(GroupSpec::family(Family::Cyclic, base))),
                    square_element: Some(t),
                    ..Params::default()
                },
            }
        }
    })
}

fn load_group(config: &RunConfig) -> Result<(GroupTable, serde_json::Value), CliError> {
    let spec = match &config.group {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| GroupSpecError::Parse(e.to_string()))?;
            let group = parse_group_spec(&text)?;
            return Ok((group, value));
        }
        None => spec_from_flags(config)?,
    };
    let group = spec.build()?;
    let value = serde_json::to_value(&spec).expect("specs serialize");
    Ok((group, value))
}

fn verify(
    group: GroupTable,
    involution: InvolutionKind,
    opts: &VerifyOptions,
) -> Result<DecompositionReport, CliError> {
    let group = std::sync::Arc::new(group);
    Ok(match involution {
        InvolutionKind::Classical => verify_theorem1(&find_theorem1_instance(&group)?, opts)?,
        InvolutionKind::Odot => verify_theorem2(&make_theorem2_instance(&group)?, opts)?,
    })
}

#[derive(Debug, Serialize)]
struct EnumerationReport {
    schema: u32,
    mode: &'static str,
    group: f2g::report::GroupDescriptor,
    involution: String,
    orders: std::collections::BTreeMap<String, u64>,
    generators: std::collections::BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

fn enumerate(
    group: GroupTable,
    spec: serde_json::Value,
    involution: InvolutionKind,
    bound: ExhaustiveBound,
) -> Result<EnumerationReport, CliError> {
    let group = std::sync::Arc::new(group);
    let alg = GroupAlgebra::new(group.clone());
    let sigma = match involution {
        InvolutionKind::Classical => classical_involution(&group),
        InvolutionKind::Odot => odot_involution(&make_theorem2_instance(&group)?)?,
    };
    let mut orders = std::collections::BTreeMap::new();
    let mut generators = std::collections::BTreeMap::new();
    let render = |gens: Vec<f2g::AlgebraElement>| gens.iter().map(|g| alg.render(g)).collect::<Vec<_>>();
    if group.order() <= MATERIALIZE_LIMIT {
        let v = enumerate_normalized_units(&alg, bound)?;
        orders.insert("V".to_string(), v.len() as u64);
        generators.insert("V".to_string(), render(canonical_generators(&alg, &v)?));
    }
    let vs = enumerate_unitary(&alg, &sigma, bound)?;
    orders.insert("V_sigma".to_string(), vs.len() as u64);
    generators.insert("V_sigma".to_string(), render(canonical_generators(&alg, &vs)?));
    Ok(EnumerationReport {
        schema: f2g::report::SCHEMA_VERSION,
        mode: "enumerate",
        group: f2g::report::GroupDescriptor {
            family: group.family().to_string(),
            name: group.name().to_string(),
            order: group.order(),
            spec: Some(spec),
        },
        involution: sigma.name().to_string(),
        orders,
        generators,
        timing_ms: None,
    })
}

#[derive(Debug, Serialize)]
struct CatalogEntry {
    name: String,
    involution: String,
    pass: bool,
    failed_checks: Vec<String>,
    report: DecompositionReport,
}

#[derive(Debug, Serialize)]
struct CatalogReport {
    schema: u32,
    mode: &'static str,
    pass: bool,
    entries: Vec<CatalogEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

fn run_catalog(opts: &VerifyOptions, timing: bool) -> Result<CatalogReport, CliError> {
    let mut entries = Vec::new();
    for (name, spec, involution) in catalog() {
        let start = Instant::now();
        let mut report = verify(spec.build()?, involution, opts)?;
        report.group.spec = Some(serde_json::to_value(&spec).expect("specs serialize"));
        if timing {
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
        }
        entries.push(CatalogEntry {
            name,
            involution: involution.to_string(),
            pass: report.passed(),
            failed_checks: report.failed_checks().map(|c| c.name.clone()).collect(),
            report,
        });
    }
    Ok(CatalogReport {
        schema: f2g::report::SCHEMA_VERSION,
        mode: "catalog",
        pass: entries.iter().all(|e| e.pass),
        entries,
        timing_ms: None,
    })
}

fn catalog_text(report: &CatalogReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<12} {:<10} {:>6} {:>12} {:>12}  result", "group", "involution", "|G|", "expected", "oracle");
    for e in &report.entries {
        let oracle = e.report.orders.get("V_sigma_oracle").map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{:<12} {:<10} {:>6} {:>12} {:>12}  {}",
            e.name,
            e.involution,
            e.report.group.order,
            e.report.orders.get("V_sigma_expected").copied().unwrap_or(0),
            oracle,
            if e.pass { "PASS".to_string() } else { format!("FAIL ({})", e.failed_checks.join(", ")) }
        );
    }
    let _ = writeln!(out, "catalog {}", if report.pass { "PASS" } else { "FAIL" });
    out
}

fn enumeration_text(r: &EnumerationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group      {} ({}, order {})", r.group.name, r.group.family, r.group.order);
    let _ = writeln!(out, "involution {}", r.involution);
    for (k, v) in &r.orders {
        let _ = writeln!(out, "|{k}| = {v}");
        if let Some(gens) = r.generators.get(k) {
            for g in gens {
                let _ = writeln!(out, "  {g}");
            }
        }
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let elapsed = || Some(start.elapsed().as_millis() as u64);
    let bound = ExhaustiveBound(config.max_exhaustive_order);
    match config.mode {
        Mode::Catalog => {
            let opts = VerifyOptions { bound, oracle: true };
            let mut report = run_catalog(&opts, config.timing)?;
            if config.timing {
                report.timing_ms = elapsed();
            }
            let output = match config.format {
                Format::Json => to_json(&report),
                Format::Text => catalog_text(&report),
            };
            Ok(Outcome::ok(if report.pass { EXIT_PASS } else { EXIT_FAIL }, output))
        }
        Mode::Enumerate => {
            let (group, spec) = load_group(config)?;
            let mut report = enumerate(group, spec, config.involution, bound)?;
            if config.timing {
                report.timing_ms = elapsed();
            }
            let output = match config.format {
                Format::Json => to_json(&report),
                Format::Text => enumeration_text(&report),
            };
            Ok(Outcome::ok(EXIT_PASS, output))
        }
        Mode::Verify | Mode::Construct => {
            let (group, spec) = load_group(config)?;
            let opts = VerifyOptions { bound, oracle: config.mode == Mode::Verify };
            let mut report = verify(group, config.involution, &opts)?;
            report.group.spec = Some(spec);
            if config.timing {
                report.timing_ms = elapsed();
            }
            let output = match config.format {
                Format::Json => to_json(&report),
                Format::Text => report.render_text(),
            };
            Ok(Outcome::ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL }, output))
        }
    }
}

fn failure(exit_code: i32, message: String) -> Outcome {
    Outcome { exit_code, output: String::new(), error: Some(message) }
}

/// Runs `config` on a dedicated thread pool.
pub fn run(config: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.threads).build() {
        Ok(pool) => pool,
        Err(e) => return failure(EXIT_INVALID, format!("thread pool: {e}")),
    };
    match pool.install(|| execute(config)) {
        Ok(outcome) => outcome,
        Err(e) => failure(e.exit_code(), e.to_string()),
    }
}

/// Writes the output to `--out` or stdout, and any error to stderr.
pub fn emit(config: &RunConfig, outcome: &Outcome) -> std::io::Result<()> {
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
        return Ok(());
    }
    match &config.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    }
}

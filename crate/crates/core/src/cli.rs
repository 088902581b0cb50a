//! The `causal-bootstrap` command line.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 a graphical
//! criterion does not hold, 4 data, I/O or estimation failure.
//!
//! `--config FILE` reads `key = value` lines and appends `--key value` for
//! every key whose flag is not already on the command line, so flags win.
//! A value of `true` adds the bare flag; `false` adds nothing.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data::{Dataset, VarKind};
use crate::density::{KernelSpec, Kernels};
use crate::effects::estimate_effects;
use crate::experiment::{
    generate_environments, run_experiment, ExperimentConfig, ExperimentError, ExperimentKind,
};
use crate::graph::{parse_graph_spec, CriterionReport, GraphSpec};
use crate::io::{read_dataset, sidecar_path, write_dataset, ImageFormat, IoError, Metadata};
use crate::learners::{Classifier, ForestParams};
use crate::resample::{
    causal_bootstrap, split_by_provenance, BootstrapError, BootstrapSpec, SampleMode, Schedule,
    RNG_ID,
};
use crate::weights::{
    parse_plan, BackdoorModel, CompiledPlan, FrontdoorModel, WeightError, WeightPlan, WeightVector,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CRITERIA: i32 = 3;
pub const EXIT_DATA: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Criteria(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Criteria(_) => EXIT_CRITERIA,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::Graph(_) | WeightError::InvalidPlan(_) => {
                CliError::Criteria(e.to_string())
            }
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<BootstrapError> for CliError {
    fn from(e: BootstrapError) -> Self {
        match e {
            BootstrapError::Weights(w) => w.into(),
            BootstrapError::SmoothingDiscrete(_)
            | BootstrapError::ContinuousTarget(_)
            | BootstrapError::InvalidSplit { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        let code = exit_code_of(&e);
        let message = e.to_string();
        match code {
            EXIT_USAGE => CliError::Usage(message),
            EXIT_CRITERIA => CliError::Criteria(message),
            _ => CliError::Data(message),
        }
    }
}

fn exit_code_of(e: &ExperimentError) -> i32 {
    match e {
        ExperimentError::Config(_) => EXIT_USAGE,
        ExperimentError::Replicate { source, .. } => exit_code_of(source),
        ExperimentError::Weights(w) => CliError::from(w.clone()).exit_code(),
        ExperimentError::Bootstrap(b) => CliError::from(b.clone()).exit_code(),
        _ => EXIT_DATA,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "causal-bootstrap",
    version,
    about = "Causal bootstrapping of observational data"
)]
struct Cli {
    /// File of `key = value` lines supplying defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the three environments of an experiment as CSV files.
    Generate(GenerateArgs),
    /// Check the back-door and front-door criteria for a graph's roles.
    Check(CheckArgs),
    /// Resample a dataset into a deconfounded sample.
    Bootstrap(BootstrapArgs),
    /// Estimate expected responses under two interventions and their contrast.
    Ate(AteArgs),
    /// Run a replicated train/test experiment and report the accuracy grid.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Backdoor,
    Frontdoor,
    Truncated,
    Plan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Dirac,
    Smoothed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ImageFormatArg {
    Csv,
    Blob,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassifierArg {
    Lda,
    Forest,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// MNIST image file (IDX format).
    #[arg(long, value_name = "PATH")]
    mnist_images: Option<PathBuf>,
    /// MNIST label file (IDX format).
    #[arg(long, value_name = "PATH")]
    mnist_labels: Option<PathBuf>,
    /// Feature table for the Parkinson's experiment.
    #[arg(long, value_name = "PATH")]
    features: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(value_parser = parse_kind)]
    experiment: ExperimentKind,
    /// Rows per environment.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    replicate: u64,
    /// Output directory; receives e1.csv, e2.csv, e3.csv and their sidecars.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    image_format: ImageFormatArg,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
    /// Only check this method's criterion.
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Debug, Args)]
struct EstimationArgs {
    #[arg(long, value_name = "PATH")]
    data: PathBuf,
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Weight plan file for `--method plan`.
    #[arg(long, value_name = "PATH")]
    plan: Option<PathBuf>,
    /// Gaussian bandwidths for a variable, `name=h` or `name=h1,h2,...`; repeatable.
    #[arg(long, value_name = "NAME=H")]
    bandwidth: Vec<String>,
    /// Proceed even if the graphical criterion fails.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct BootstrapArgs {
    #[command(flatten)]
    estimation: EstimationArgs,
    #[arg(long, value_enum, default_value = "dirac")]
    mode: Mode,
    /// `mirror`, `per-class`, or a comma-separated list of intervention values.
    #[arg(long, default_value = "mirror")]
    schedule: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    replicate: u64,
    /// Assign emitted rows to this many folds with no source row shared between folds.
    #[arg(long, value_name = "K")]
    split_sample: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AteArgs {
    #[command(flatten)]
    estimation: EstimationArgs,
    #[arg(long, allow_hyphen_values = true)]
    y1: f64,
    #[arg(long, allow_hyphen_values = true)]
    y0: f64,
    /// Also write the table as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(value_parser = parse_kind)]
    experiment: ExperimentKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    classifier: Option<ClassifierArg>,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    max_features: Option<usize>,
    #[arg(long)]
    min_leaf: Option<usize>,
    #[arg(long, value_enum, default_value = "dirac")]
    mode: Mode,
    /// Weight plan for the custom experiment.
    #[arg(long, value_name = "PATH")]
    plan: Option<PathBuf>,
    #[command(flatten)]
    source: SourceArgs,
    /// Report CSV; a sidecar with the configuration is written next to it.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<ExperimentKind, String> {
    s.parse()
}

/// Parses arguments and runs, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match apply_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

fn apply_config(mut args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        let a = a.to_string_lossy();
        if a == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else { return Ok(args) };
    let meta = Metadata::read(&path).map_err(|e| CliError::Usage(e.to_string()))?;
    let present = |flag: &str, args: &[OsString]| {
        args.iter().any(|a| {
            let a = a.to_string_lossy();
            a == flag || a.starts_with(&format!("{flag}="))
        })
    };
    let mut extra = Vec::new();
    for (key, value) in meta.entries() {
        let flag = format!("--{key}");
        if key == "config" || present(&flag, &args) {
            continue;
        }
        match value {
            "true" => extra.push(OsString::from(flag)),
            "false" => {}
            v => {
                extra.push(OsString::from(flag));
                extra.push(OsString::from(v));
            }
        }
    }
    args.extend(extra);
    Ok(args)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Check(a) => cmd_check(a),
        Command::Bootstrap(a) => cmd_bootstrap(a),
        Command::Ate(a) => cmd_ate(a),
        Command::Experiment(a) => cmd_experiment(a),
    }
}

fn io_err(path: &Path, e: impl ToString) -> CliError {
    CliError::Data(format!("{}: {}", path.display(), e.to_string()))
}

fn experiment_config(
    kind: ExperimentKind,
    n: Option<usize>,
    seed: u64,
    source: SourceArgs,
) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(kind);
    if let Some(n) = n {
        c.n = n;
    }
    c.seed = seed;
    c.mnist_images = source.mnist_images;
    c.mnist_labels = source.mnist_labels;
    c.features = source.features;
    c
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let config = experiment_config(a.experiment, a.n, a.seed, a.source);
    let (seeds, envs) = generate_environments(&config, a.replicate)?;
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;
    let format = match a.image_format {
        ImageFormatArg::Csv => ImageFormat::Csv,
        ImageFormatArg::Blob => ImageFormat::Blob,
    };
    for (k, (data, seed)) in envs.iter().zip(seeds).enumerate() {
        let path = a.out.join(format!("e{}.csv", k + 1));
        let mut meta = Metadata::new();
        meta.set("experiment", a.experiment)
            .set("environment", k + 1)
            .set("n", config.n)
            .set("seed", a.seed)
            .set("replicate", a.replicate)
            .set("derived_seed", seed);
        write_dataset(&path, data, &[], format, &meta)?;
        println!("wrote {} ({} rows)", path.display(), data.n_rows());
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<GraphSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_graph_spec(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn role<'a>(value: &'a Option<String>, name: &str, path: &Path) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("{}: no `role {name}` declared", path.display())))
}

fn graph_err(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn report_lines(name: &str, report: &CriterionReport) -> String {
    if report.holds() {
        format!("{name} criterion holds\n")
    } else {
        let mut s = format!("{name} criterion fails\n");
        for v in &report.violations {
            let _ = writeln!(s, "  {v}");
        }
        s
    }
}

fn backdoor_report(spec: &GraphSpec, path: &Path) -> Result<CriterionReport, CliError> {
    let r = &spec.roles;
    let adjust: Vec<&str> = r.adjust.iter().map(String::as_str).collect();
    spec.graph
        .validate_backdoor(
            &adjust,
            role(&r.target, "target", path)?,
            role(&r.effect, "effect", path)?,
        )
        .map_err(graph_err)
}

fn frontdoor_report(spec: &GraphSpec, path: &Path) -> Result<CriterionReport, CliError> {
    let r = &spec.roles;
    spec.graph
        .validate_frontdoor(
            role(&r.mediator, "mediator", path)?,
            role(&r.target, "target", path)?,
            role(&r.effect, "effect", path)?,
        )
        .map_err(graph_err)
}

fn cmd_check(a: CheckArgs) -> Result<(), CliError> {
    let spec = read_graph(&a.graph)?;
    let mut out = String::new();
    let mut failed = false;
    let want_backdoor = matches!(a.method, Some(Method::Backdoor))
        || (a.method.is_none() && !spec.roles.adjust.is_empty());
    let want_frontdoor = matches!(a.method, Some(Method::Frontdoor))
        || (a.method.is_none() && spec.roles.mediator.is_some());
    if want_backdoor {
        let r = backdoor_report(&spec, &a.graph)?;
        failed |= !r.holds();
        out += &report_lines("back-door", &r);
    }
    if want_frontdoor {
        let r = frontdoor_report(&spec, &a.graph)?;
        failed |= !r.holds();
        out += &report_lines("front-door", &r);
    }
    if matches!(a.method, Some(Method::Truncated)) {
        let r = &spec.roles;
        match WeightPlan::truncated(
            &spec.graph,
            role(&r.effect, "effect", &a.graph)?,
            role(&r.target, "target", &a.graph)?,
        ) {
            Ok(_) => out += "truncated factorization available\n",
            Err(e) => {
                failed = true;
                let _ = writeln!(out, "truncated factorization unavailable: {e}");
            }
        }
    }
    if matches!(a.method, Some(Method::Plan)) {
        return Err(CliError::Usage(
            "`check` has nothing to verify for a plan file".into(),
        ));
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no adjustment set or mediator declared",
            a.graph.display()
        )));
    }
    print!("{out}");
    if failed {
        return Err(CliError::Criteria("criterion violated".into()));
    }
    Ok(())
}

fn parse_bandwidths(specs: &[String]) -> Result<Kernels, CliError> {
    let mut kernels = Kernels::new();
    for s in specs {
        let bad = || {
            CliError::Usage(format!(
                "invalid --bandwidth `{s}`; expected NAME=H or NAME=H1,H2,..."
            ))
        };
        let (name, values) = s.split_once('=').ok_or_else(bad)?;
        let bandwidths = values
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        kernels = kernels.with(name.trim(), KernelSpec::Gaussian { bandwidths });
    }
    Ok(kernels)
}

enum WeightSource {
    Backdoor(BackdoorModel),
    Frontdoor(FrontdoorModel),
    Plan(CompiledPlan),
}

impl WeightSource {
    fn weights(&self, y: f64) -> Result<WeightVector, WeightError> {
        match self {
            WeightSource::Backdoor(m) => m.weights(y),
            WeightSource::Frontdoor(m) => m.weights(y),
            WeightSource::Plan(p) => p.weights(y),
        }
    }
}

/// Everything an estimation command needs: data, roles and a weight function.
struct Prepared {
    data: Dataset,
    effect: String,
    target: String,
    weights: WeightSource,
    description: String,
}

fn schema_for(spec: &GraphSpec, names: &[&str]) -> Result<Vec<(String, VarKind)>, CliError> {
    let mut schema: Vec<(String, VarKind)> = Vec::new();
    for &name in names {
        if schema.iter().any(|(n, _)| n == name) {
            continue;
        }
        let meta = spec.graph.meta(name).map_err(graph_err)?;
        let kind = meta.kind.ok_or_else(|| {
            CliError::Criteria(format!("`{name}` is latent and cannot be read from data"))
        })?;
        schema.push((name.to_string(), kind));
    }
    Ok(schema)
}

fn prepare(a: &EstimationArgs) -> Result<Prepared, CliError> {
    let spec = read_graph(&a.graph)?;
    let kernels = parse_bandwidths(&a.bandwidth)?;
    let roles = &spec.roles;
    let violated = |name: &str, report: CriterionReport| -> Result<(), CliError> {
        if report.holds() || a.force {
            return Ok(());
        }
        let details: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        Err(CliError::Criteria(format!(
            "{name} criterion fails: {}",
            details.join("; ")
        )))
    };

    let plan = match a.method {
        Method::Backdoor => {
            violated("back-door", backdoor_report(&spec, &a.graph)?)?;
            None
        }
        Method::Frontdoor => {
            violated("front-door", frontdoor_report(&spec, &a.graph)?)?;
            None
        }
        Method::Truncated => Some(WeightPlan::truncated(
            &spec.graph,
            role(&roles.effect, "effect", &a.graph)?,
            role(&roles.target, "target", &a.graph)?,
        )?),
        Method::Plan => {
            let path = a
                .plan
                .as_ref()
                .ok_or_else(|| CliError::Usage("`--method plan` needs --plan".into()))?;
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let plan = parse_plan(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            plan.validate()
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Some(plan)
        }
    };

    let (effect, target) = match &plan {
        Some(p) => (p.effect.clone(), p.target.clone()),
        None => (
            role(&roles.effect, "effect", &a.graph)?.to_string(),
            role(&roles.target, "target", &a.graph)?.to_string(),
        ),
    };
    let mut needed: Vec<&str> = vec![effect.as_str(), target.as_str()];
    match (&plan, a.method) {
        (Some(p), _) => needed.extend(p.secondary()),
        (None, Method::Backdoor) => needed.extend(roles.adjust.iter().map(String::as_str)),
        (None, _) => needed.push(role(&roles.mediator, "mediator", &a.graph)?),
    }
    let schema = schema_for(&spec, &needed)?;
    let data = read_dataset(&a.data, Some(&schema))?;

    let (weights, description) = match (plan, a.method) {
        (Some(p), Method::Truncated) => (
            WeightSource::Plan(p.compile(&data, &kernels)?),
            "truncated".to_string(),
        ),
        (Some(p), _) => (
            WeightSource::Plan(p.compile(&data, &kernels)?),
            "plan".to_string(),
        ),
        (None, Method::Backdoor) => {
            let adjust: Vec<&str> = roles.adjust.iter().map(String::as_str).collect();
            let model = BackdoorModel::fit(&data, &adjust, &target, &kernels)?;
            (
                WeightSource::Backdoor(model),
                format!("backdoor(adjust={})", adjust.join(",")),
            )
        }
        (None, _) => {
            let mediator = role(&roles.mediator, "mediator", &a.graph)?;
            let model = FrontdoorModel::fit(&data, mediator, &target, &kernels)?;
            (
                WeightSource::Frontdoor(model),
                format!("frontdoor(mediator={mediator})"),
            )
        }
    };
    Ok(Prepared {
        data,
        effect,
        target,
        weights,
        description,
    })
}

fn parse_schedule(s: &str) -> Result<Schedule, CliError> {
    match s {
        "mirror" => Ok(Schedule::MirrorObserved),
        "per-class" => Ok(Schedule::PerClassFloor),
        list => list
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Schedule::Explicit)
            .map_err(|_| {
                CliError::Usage(format!(
                    "invalid --schedule `{s}`; expected mirror, per-class or a list of values"
                ))
            }),
    }
}

fn cmd_bootstrap(a: BootstrapArgs) -> Result<(), CliError> {
    let p = prepare(&a.estimation)?;
    let mode = match a.mode {
        Mode::Dirac => SampleMode::Dirac,
        Mode::Smoothed => SampleMode::Smoothed(parse_bandwidths(&a.estimation.bandwidth)?),
    };
    let spec = BootstrapSpec::new(a.seed)
        .with_replicate(a.replicate)
        .with_mode(mode)
        .with_schedule(parse_schedule(&a.schedule)?);
    let sample = causal_bootstrap(
        &p.data,
        &[p.effect.as_str()],
        &p.target,
        |y| p.weights.weights(y),
        &spec,
    )?;
    let folds = match a.split_sample {
        Some(k) => Some(split_by_provenance(
            &sample.provenance,
            k,
            a.seed ^ a.replicate,
        )?),
        None => None,
    };

    let mut meta = Metadata::new();
    meta.set("source", a.estimation.data.display())
        .set("graph", a.estimation.graph.display())
        .set("method", &p.description)
        .set("effect", &p.effect)
        .set("target", &p.target)
        .set("mode", format!("{:?}", a.mode).to_lowercase())
        .set("schedule", &a.schedule)
        .set("seed", a.seed)
        .set("replicate", a.replicate)
        .set("rng", RNG_ID)
        .set("floor_hits", sample.floor_hits);
    if let Some(k) = a.split_sample {
        meta.set("split_sample", k);
    }
    let mut extra: Vec<(&str, &[usize])> = vec![("__src_row", &sample.provenance)];
    if let Some(f) = &folds {
        extra.push(("__fold", f));
    }
    write_dataset(&a.out, &sample.data, &extra, ImageFormat::Csv, &meta)?;
    println!(
        "wrote {} ({} rows; sidecar {})",
        a.out.display(),
        sample.data.n_rows(),
        sidecar_path(&a.out).display()
    );
    if sample.floor_hits > 0 {
        eprintln!(
            "warning: {} density evaluations hit the floor",
            sample.floor_hits
        );
    }
    Ok(())
}

fn cmd_ate(a: AteArgs) -> Result<(), CliError> {
    let p = prepare(&a.estimation)?;
    let est = estimate_effects(&p.data, &[p.effect.as_str()], &[a.y1, a.y0], |y| {
        p.weights.weights(y)
    })
    .map_err(|e| match e {
        crate::effects::EffectError::Weights(w) => CliError::from(w),
        other => CliError::Data(other.to_string()),
    })?;
    let r1 = est.response(a.y1).expect("requested").to_vec();
    let r0 = est.response(a.y0).expect("requested").to_vec();
    let contrast: Vec<f64> = r1.iter().zip(&r0).map(|(a, b)| a - b).collect();

    println!("method: {}", p.description);
    println!(
        "{:<12} {:>16} {:>16} {:>16}",
        "dimension",
        format!("do({})", a.y1),
        format!("do({})", a.y0),
        "contrast"
    );
    for (j, dim) in est.dimensions.iter().enumerate() {
        println!(
            "{:<12} {:>16.6} {:>16.6} {:>16.6}",
            dim, r1[j], r0[j], contrast[j]
        );
    }
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
        w.write_record(["dimension", "response_y1", "response_y0", "contrast"])
            .map_err(|e| io_err(path, e))?;
        for (j, dim) in est.dimensions.iter().enumerate() {
            w.write_record([
                dim.clone(),
                r1[j].to_string(),
                r0[j].to_string(),
                contrast[j].to_string(),
            ])
            .map_err(|e| io_err(path, e))?;
        }
        w.flush().map_err(|e| io_err(path, e))?;
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), CliError> {
    let mut c = experiment_config(a.experiment, a.n, a.seed, a.source);
    c.replicates = a.replicates;
    c.smoothed = matches!(a.mode, Mode::Smoothed);
    let forest_flags = a.trees.is_some() || a.max_features.is_some() || a.min_leaf.is_some();
    let use_forest = match a.classifier {
        Some(ClassifierArg::Forest) => true,
        Some(ClassifierArg::Lda) => false,
        None => matches!(c.classifier, Classifier::Forest(_)),
    };
    if use_forest {
        let base = ForestParams::default();
        c.classifier = Classifier::Forest(ForestParams {
            trees: a.trees.unwrap_or(base.trees),
            max_features: a.max_features.or(base.max_features),
            min_leaf: a.min_leaf.unwrap_or(base.min_leaf),
            ..base
        });
    } else if forest_flags {
        return Err(CliError::Usage(
            "--trees, --max-features and --min-leaf apply to the forest only".into(),
        ));
    } else {
        c.classifier = Classifier::Lda;
    }
    if let Some(path) = &a.plan {
        if a.experiment != ExperimentKind::Custom {
            return Err(CliError::Usage(
                "--plan applies to the custom experiment only".into(),
            ));
        }
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let plan =
            parse_plan(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        c.plan = Some(plan);
    }

    let start = Instant::now();
    let report = run_experiment(&c)?;
    let elapsed = start.elapsed();
    print!("{}", report.table());
    println!("elapsed: {:.1?}", elapsed);

    if let Some(path) = &a.out {
        fs::write(path, report.to_csv()).map_err(|e| io_err(path, e))?;
        let mut meta = report.metadata();
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        meta.set("generated_unix", now)
            .set("elapsed_seconds", format!("{:.3}", elapsed.as_secs_f64()));
        if let Some(plan) = &a.plan {
            meta.set("plan", plan.display());
        }
        meta.write(&sidecar_path(path))?;
    }
    Ok(())
}

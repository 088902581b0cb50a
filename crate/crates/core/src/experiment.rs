//! Replicated train/test experiments comparing classifiers trained on
//! confounded data with classifiers trained on causal bootstrap samples.
//!
//! Each replicate generates environment 1 (training), environment 2
//! (confounded test) and environment 3 (non-confounded test) on derived
//! seeds, trains one classifier on raw environment 1 and one on its causal
//! bootstrap, and scores both on environments 2 and 3.

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::data::Dataset;
use crate::density::Kernels;
use crate::io::{IoError, Metadata};
use crate::learners::{accuracy, Classifier, FeatureMatrix, ForestParams, LearnerError};
use crate::resample::{causal_bootstrap, BootstrapError, BootstrapSpec, SampleMode, RNG_ID};
use crate::synthdata::{
    confound_resample_parkinsons, derive_seed, gen_gauss_backdoor, gen_gauss_frontdoor,
    gen_mnist_backdoor, gen_mnist_frontdoor, gen_parkinsons_standin, gen_tikka, load_feature_table,
    load_mnist_idx, EnvSpec, ImagePool, MnistImages, SynthError,
};
use crate::weights::{BackdoorModel, FrontdoorModel, WeightError, WeightPlan};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Bootstrap(#[from] BootstrapError),
    #[error(transparent)]
    Learner(#[from] LearnerError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: usize,
        #[source]
        source: Box<ExperimentError>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    GaussBackdoor,
    GaussFrontdoor,
    MnistBackdoor,
    MnistFrontdoor,
    ParkinsonsBackdoor,
    Custom,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::GaussBackdoor,
        ExperimentKind::GaussFrontdoor,
        ExperimentKind::MnistBackdoor,
        ExperimentKind::MnistFrontdoor,
        ExperimentKind::ParkinsonsBackdoor,
        ExperimentKind::Custom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::GaussBackdoor => "gauss-backdoor",
            ExperimentKind::GaussFrontdoor => "gauss-frontdoor",
            ExperimentKind::MnistBackdoor => "mnist-backdoor",
            ExperimentKind::MnistFrontdoor => "mnist-frontdoor",
            ExperimentKind::ParkinsonsBackdoor => "parkinsons-backdoor",
            ExperimentKind::Custom => "custom",
        }
    }

    /// Samples per environment unless overridden.
    pub fn default_n(&self) -> usize {
        match self {
            ExperimentKind::MnistBackdoor | ExperimentKind::MnistFrontdoor => 500,
            ExperimentKind::ParkinsonsBackdoor => 1000,
            _ => 2000,
        }
    }

    pub fn default_classifier(&self) -> Classifier {
        match self {
            ExperimentKind::GaussBackdoor
            | ExperimentKind::GaussFrontdoor
            | ExperimentKind::Custom => Classifier::Lda,
            _ => Classifier::Forest(ForestParams::default()),
        }
    }

    pub fn uses_mnist(&self) -> bool {
        matches!(
            self,
            ExperimentKind::MnistBackdoor | ExperimentKind::MnistFrontdoor
        )
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown experiment `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub classifier: Classifier,
    pub smoothed: bool,
    pub mnist_images: Option<PathBuf>,
    pub mnist_labels: Option<PathBuf>,
    /// Feature table for the Parkinson's experiment; a synthetic stand-in when absent.
    pub features: Option<PathBuf>,
    /// Plan for the custom experiment; the Tikka plan when absent.
    pub plan: Option<WeightPlan>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            n: kind.default_n(),
            replicates: 10,
            seed: 0,
            classifier: kind.default_classifier(),
            smoothed: false,
            mnist_images: None,
            mnist_labels: None,
            features: None,
            plan: None,
        }
    }

    pub fn classifier_name(&self) -> String {
        match self.classifier {
            Classifier::Lda => "lda".into(),
            Classifier::Forest(p) => format!(
                "forest(trees={}, max_features={}, min_leaf={})",
                p.trees,
                p.max_features.map_or("sqrt".into(), |m| m.to_string()),
                p.min_leaf
            ),
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.replicates == 0 {
            return Err(ExperimentError::Config(
                "replicates must be at least 1".into(),
            ));
        }
        if self.n < 2 {
            return Err(ExperimentError::Config("n must be at least 2".into()));
        }
        if self.kind.uses_mnist() && (self.mnist_images.is_none() || self.mnist_labels.is_none()) {
            return Err(ExperimentError::Config(format!(
                "{} needs --mnist-images and --mnist-labels",
                self.kind
            )));
        }
        Ok(())
    }
}

/// Accuracies of one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateResult {
    pub replicate: usize,
    pub seeds: [u64; 3],
    /// `[train][test]` with train ∈ {confounded, deconfounded}, test ∈ {e2, e3}.
    pub accuracy: [[f64; 2]; 2],
    pub floor_hits: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub replicates: Vec<ReplicateResult>,
}

pub const CELLS: [&str; 4] = [
    "confounded_e2",
    "confounded_e3",
    "deconfounded_e2",
    "deconfounded_e3",
];

impl ExperimentReport {
    fn cell(&self, k: usize) -> Vec<f64> {
        self.replicates
            .iter()
            .map(|r| r.accuracy[k / 2][k % 2])
            .collect()
    }

    /// Mean of each cell, in [`CELLS`] order.
    pub fn mean(&self) -> [f64; 4] {
        std::array::from_fn(|k| {
            let v = self.cell(k);
            v.iter().sum::<f64>() / v.len() as f64
        })
    }

    /// Sample standard deviation of each cell; `None` for a single replicate.
    pub fn std(&self) -> Option<[f64; 4]> {
        if self.replicates.len() < 2 {
            return None;
        }
        let mean = self.mean();
        Some(std::array::from_fn(|k| {
            let v = self.cell(k);
            let ss: f64 = v.iter().map(|x| (x - mean[k]).powi(2)).sum();
            (ss / (v.len() - 1) as f64).sqrt()
        }))
    }

    pub fn floor_hits(&self) -> usize {
        self.replicates.iter().map(|r| r.floor_hits).sum()
    }

    /// Per-replicate rows followed by `mean` and `std` rows. Contains no timestamps.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("replicate,seed_e1,seed_e2,seed_e3,");
        out.push_str(&CELLS.join(","));
        out.push_str(",floor_hits\n");
        for r in &self.replicates {
            let acc: Vec<String> = (0..4)
                .map(|k| r.accuracy[k / 2][k % 2].to_string())
                .collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.replicate,
                r.seeds[0],
                r.seeds[1],
                r.seeds[2],
                acc.join(","),
                r.floor_hits
            );
        }
        let join = |v: [f64; 4]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "mean,,,,{},{}", join(self.mean()), self.floor_hits());
        match self.std() {
            Some(s) => {
                let _ = writeln!(out, "std,,,,{},", join(s));
            }
            None => out.push_str("std,,,,n/a,n/a,n/a,n/a,\n"),
        }
        out
    }

    /// Human-readable 2×2 accuracy grid in percent.
    pub fn table(&self) -> String {
        let mean = self.mean();
        let std = self.std();
        let cell = |k: usize| match std {
            Some(s) => format!("{:.1} ± {:.1}", 100.0 * mean[k], 100.0 * s[k]),
            None => format!("{:.1} ± n/a", 100.0 * mean[k]),
        };
        let c = &self.config;
        let mut out = format!(
            "experiment {}, classifier {}, {} replicate(s), n = {} per environment, seed {}\n",
            c.kind,
            c.classifier_name(),
            self.replicates.len(),
            c.n,
            c.seed
        );
        let _ = writeln!(
            out,
            "{:<20} {:>22} {:>26}",
            "", "test e2 (confounded)", "test e3 (non-confounded)"
        );
        let _ = writeln!(
            out,
            "{:<20} {:>22} {:>26}",
            "train confounded",
            cell(0),
            cell(1)
        );
        let _ = writeln!(
            out,
            "{:<20} {:>22} {:>26}",
            "train deconfounded",
            cell(2),
            cell(3)
        );
        let _ = writeln!(out, "weight floor hits: {}", self.floor_hits());
        out
    }

    /// Sidecar entries describing the run.
    pub fn metadata(&self) -> Metadata {
        let c = &self.config;
        let mut m = Metadata::new();
        m.set("experiment", c.kind)
            .set("n", c.n)
            .set("replicates", c.replicates)
            .set("seed", c.seed)
            .set("classifier", c.classifier_name())
            .set("mode", if c.smoothed { "smoothed" } else { "dirac" })
            .set("rng", RNG_ID)
            .set("floor_hits", self.floor_hits());
        if let Some(p) = &c.features {
            m.set("features", p.display());
        } else if c.kind == ExperimentKind::ParkinsonsBackdoor {
            m.set("features", "synthetic stand-in");
        }
        if let (Some(i), Some(l)) = (&c.mnist_images, &c.mnist_labels) {
            m.set("mnist_images", i.display())
                .set("mnist_labels", l.display());
        }
        m
    }
}

enum Source {
    Synthetic,
    Mnist(MnistImages),
    Features(Dataset),
}

fn load_source(c: &ExperimentConfig) -> Result<Source, ExperimentError> {
    Ok(match c.kind {
        ExperimentKind::MnistBackdoor | ExperimentKind::MnistFrontdoor => {
            let (i, l) = (c.mnist_images.as_ref(), c.mnist_labels.as_ref());
            Source::Mnist(load_mnist_idx(
                i.expect("validated"),
                l.expect("validated"),
            )?)
        }
        ExperimentKind::ParkinsonsBackdoor => Source::Features(match &c.features {
            Some(p) => load_feature_table(p)?,
            None => gen_parkinsons_standin(200, c.seed)?,
        }),
        _ => Source::Synthetic,
    })
}

fn generate(
    c: &ExperimentConfig,
    source: &Source,
    replicate: u64,
) -> Result<([u64; 3], Vec<Dataset>), ExperimentError> {
    let specs: Vec<EnvSpec> = (1..=3)
        .map(|e| EnvSpec::derived(c.seed, replicate, e, c.n))
        .collect::<Result<_, _>>()?;
    let seeds = [specs[0].seed, specs[1].seed, specs[2].seed];
    let data = match source {
        Source::Mnist(m) => {
            let pools = ImagePool::partition(m, 3, derive_seed(c.seed, replicate, 0));
            let gen = if c.kind == ExperimentKind::MnistBackdoor {
                gen_mnist_backdoor
            } else {
                gen_mnist_frontdoor
            };
            specs
                .iter()
                .zip(&pools)
                .map(|(s, p)| gen(m, p, s))
                .collect::<Result<_, _>>()?
        }
        Source::Features(table) => specs
            .iter()
            .map(|s| confound_resample_parkinsons(table, s))
            .collect::<Result<_, _>>()?,
        Source::Synthetic => {
            let gen = match c.kind {
                ExperimentKind::GaussBackdoor => gen_gauss_backdoor,
                ExperimentKind::GaussFrontdoor => gen_gauss_frontdoor,
                _ => gen_tikka,
            };
            specs.iter().map(gen).collect::<Result<_, _>>()?
        }
    };
    Ok((seeds, data))
}

/// Environments 1, 2 and 3 of one replicate with their seeds, as the experiment would generate them.
pub fn generate_environments(
    config: &ExperimentConfig,
    replicate: u64,
) -> Result<([u64; 3], Vec<Dataset>), ExperimentError> {
    config.validate()?;
    generate(config, &load_source(config)?, replicate)
}

fn features(
    kind: ExperimentKind,
    d: &Dataset,
) -> Result<(FeatureMatrix, Vec<f64>), ExperimentError> {
    let (width, mut values) = d.matrix(&["x"]).map_err(SynthError::from)?;
    if kind.uses_mnist() {
        values.iter_mut().for_each(|v| *v /= 255.0);
    }
    let labels = d.scalar("y").map_err(SynthError::from)?.to_vec();
    Ok((FeatureMatrix::new(d.n_rows(), width, values)?, labels))
}

/// Deconfounds the training environment with the method matching the experiment.
pub fn deconfound(
    kind: ExperimentKind,
    plan: Option<&WeightPlan>,
    train: &Dataset,
    spec: &BootstrapSpec,
) -> Result<crate::resample::DeconfoundedSample, ExperimentError> {
    let kernels = Kernels::new();
    let run = |f: &(dyn Fn(f64) -> Result<crate::weights::WeightVector, WeightError> + Sync)| {
        causal_bootstrap(train, &["x"], "y", f, spec)
    };
    Ok(match kind {
        ExperimentKind::GaussBackdoor
        | ExperimentKind::MnistBackdoor
        | ExperimentKind::ParkinsonsBackdoor => {
            let adjust = if kind == ExperimentKind::ParkinsonsBackdoor {
                "dataset_id"
            } else {
                "u"
            };
            let model = BackdoorModel::fit(train, &[adjust], "y", &kernels)?;
            run(&|y| model.weights(y))?
        }
        ExperimentKind::GaussFrontdoor | ExperimentKind::MnistFrontdoor => {
            let model = FrontdoorModel::fit(train, "z", "y", &kernels)?;
            run(&|y| model.weights(y))?
        }
        ExperimentKind::Custom => {
            let default = WeightPlan::tikka("x", "y", "w", "z");
            let compiled = plan.unwrap_or(&default).compile(train, &kernels)?;
            run(&|y| compiled.weights(y))?
        }
    })
}

fn run_replicate(
    c: &ExperimentConfig,
    source: &Source,
    r: usize,
) -> Result<ReplicateResult, ExperimentError> {
    let (seeds, envs) = generate(c, source, r as u64)?;
    let mode = if c.smoothed {
        SampleMode::Smoothed(Kernels::new())
    } else {
        SampleMode::Dirac
    };
    let spec = BootstrapSpec::new(c.seed)
        .with_replicate(r as u64)
        .with_mode(mode);
    let sample = deconfound(c.kind, c.plan.as_ref(), &envs[0], &spec)?;

    let classifier = match c.classifier {
        Classifier::Forest(p) => Classifier::Forest(ForestParams {
            seed: p.seed ^ seeds[0],
            ..p
        }),
        other => other,
    };
    let tests = [features(c.kind, &envs[1])?, features(c.kind, &envs[2])?];
    let mut acc = [[0.0; 2]; 2];
    for (t, train) in [&envs[0], &sample.data].into_iter().enumerate() {
        let (x, y) = features(c.kind, train)?;
        let model = classifier.fit(&x, &y)?;
        for (k, (xt, yt)) in tests.iter().enumerate() {
            acc[t][k] = accuracy(&model.predict(xt)?, yt)?;
        }
    }
    Ok(ReplicateResult {
        replicate: r + 1,
        seeds,
        accuracy: acc,
        floor_hits: sample.floor_hits,
    })
}

/// Runs all replicates (in parallel; results keep replicate order).
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    config.validate()?;
    let source = load_source(config)?;
    let replicates = (0..config.replicates)
        .into_par_iter()
        .map(|r| {
            run_replicate(config, &source, r).map_err(|e| ExperimentError::Replicate {
                replicate: r + 1,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExperimentReport {
        config: config.clone(),
        replicates,
    })
}

//! Drawing causal bootstrap samples from weighted kernel density estimates.
//!
//! For every scheduled intervention value `y`, a source row `i` is drawn with
//! probability `wᵢ / Σw` and emitted as `(xᵢ, y)`, optionally perturbed by the
//! effect kernels (smoothed bootstrap).

use std::collections::HashMap;

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rand_distr::Normal;
use rayon::prelude::*;
use thiserror::Error;

use crate::data::{DataError, Dataset, VarKind};
use crate::density::{DensityError, KernelSpec, Kernels};
use crate::weights::{WeightError, WeightVector};

/// Identifies the random number generator and how streams are derived.
pub const RNG_ID: &str =
    "rand_chacha 0.9 ChaCha20Rng; seed_from_u64(seed ^ replicate); stream = intervention group";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BootstrapError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("the intervention schedule is empty")]
    EmptySchedule,
    #[error("per-class schedules need a discrete target; `{0}` is continuous")]
    ContinuousTarget(String),
    #[error("smoothing is undefined for discrete variable `{0}`")]
    SmoothingDiscrete(String),
    #[error("cannot split {sources} distinct source rows into {folds} folds")]
    InvalidSplit { sources: usize, folds: usize },
}

/// Which intervention values to simulate, one emitted row per entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    /// The observed target column, in row order.
    MirrorObserved,
    /// [`grouped_schedule`]: each observed class in proportion to its frequency.
    PerClassFloor,
    Explicit(Vec<f64>),
}

impl Schedule {
    pub fn resolve(&self, data: &Dataset, target: &str) -> Result<Vec<f64>, BootstrapError> {
        let values = match self {
            Schedule::MirrorObserved => data.scalar(target)?.to_vec(),
            Schedule::PerClassFloor => grouped_schedule(data, target)?,
            Schedule::Explicit(values) => values.clone(),
        };
        if values.is_empty() {
            return Err(BootstrapError::EmptySchedule);
        }
        Ok(values)
    }
}

#[derive(Debug, Clone)]
pub enum SampleMode {
    /// Emit source rows unchanged.
    Dirac,
    /// Add kernel noise to continuous effect dimensions; defaults are Silverman Gaussians.
    Smoothed(Kernels),
}

#[derive(Debug, Clone)]
pub struct BootstrapSpec {
    pub mode: SampleMode,
    pub schedule: Schedule,
    pub seed: u64,
    pub replicate: u64,
}

impl BootstrapSpec {
    pub fn new(seed: u64) -> Self {
        BootstrapSpec {
            mode: SampleMode::Dirac,
            schedule: Schedule::MirrorObserved,
            seed,
            replicate: 0,
        }
    }

    pub fn with_mode(mut self, mode: SampleMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_replicate(mut self, replicate: u64) -> Self {
        self.replicate = replicate;
        self
    }

    /// The generator for one intervention group.
    pub fn rng(&self, group: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed ^ self.replicate);
        rng.set_stream(group);
        rng
    }
}

/// Largest-remainder apportionment of `total` draws to the distinct values
/// of `values`, proportional to their frequencies. Returned in ascending value order.
pub fn grouped_counts(values: &[f64], total: usize) -> Vec<(f64, usize)> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let mut counts: Vec<(f64, usize)> = Vec::new();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    for v in sorted {
        match counts.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => counts.push((v, 1)),
        }
    }
    // Exact integer arithmetic: floor(total·c/n) and remainder (total·c) mod n.
    let mut alloc: Vec<(f64, usize, usize)> = counts
        .iter()
        .map(|&(v, c)| {
            let scaled = total as u128 * c as u128;
            (
                v,
                (scaled / n as u128) as usize,
                (scaled % n as u128) as usize,
            )
        })
        .collect();
    let assigned: usize = alloc.iter().map(|a| a.1).sum();
    let mut order: Vec<usize> = (0..alloc.len()).collect();
    order.sort_by(|&a, &b| {
        alloc[b]
            .2
            .cmp(&alloc[a].2)
            .then(alloc[a].0.total_cmp(&alloc[b].0))
    });
    for &i in order.iter().take(total - assigned) {
        alloc[i].1 += 1;
    }
    alloc.into_iter().map(|(v, c, _)| (v, c)).collect()
}

/// `N` intervention values, grouped by class: `⌊N·p̂(y)⌋` of each observed
/// class, with the remainder going to the largest fractional parts.
pub fn grouped_schedule(data: &Dataset, target: &str) -> Result<Vec<f64>, BootstrapError> {
    if !data.variable(target)?.kind().is_discrete() {
        return Err(BootstrapError::ContinuousTarget(target.to_string()));
    }
    let values = data.scalar(target)?;
    Ok(grouped_counts(values, values.len())
        .into_iter()
        .flat_map(|(v, c)| std::iter::repeat_n(v, c))
        .collect())
}

/// Kernel used to perturb one effect dimension in smoothed mode.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionKernel {
    pub discrete: bool,
    pub kernel: KernelSpec,
}

/// Per-dimension kernels for the effect variables, in record order.
pub fn dimension_kernels(
    data: &Dataset,
    effect: &[&str],
    kernels: &Kernels,
) -> Result<Vec<DimensionKernel>, BootstrapError> {
    let mut out = Vec::new();
    for &name in effect {
        let var = data.variable(name)?;
        let kernel = kernels.resolve(data, name)?;
        match (var.kind(), kernel) {
            (VarKind::Continuous { .. }, KernelSpec::Gaussian { bandwidths }) => {
                out.extend(bandwidths.into_iter().map(|h| DimensionKernel {
                    discrete: false,
                    kernel: KernelSpec::Gaussian {
                        bandwidths: vec![h],
                    },
                }));
            }
            (kind, kernel) => out.extend((0..kind.width()).map(|_| DimensionKernel {
                discrete: kind.is_discrete(),
                kernel: kernel.clone(),
            })),
        }
    }
    Ok(out)
}

/// `center` plus independent per-dimension kernel noise. Kronecker and Dirac
/// dimensions pass through unchanged.
pub fn smoothed_draw<R: Rng + ?Sized>(
    center: &[f64],
    dims: &[DimensionKernel],
    rng: &mut R,
) -> Result<Vec<f64>, BootstrapError> {
    assert_eq!(center.len(), dims.len(), "one kernel per dimension");
    let mut out = Vec::with_capacity(center.len());
    for (i, (&c, d)) in center.iter().zip(dims).enumerate() {
        match &d.kernel {
            KernelSpec::Gaussian { bandwidths } => {
                if d.discrete {
                    return Err(BootstrapError::SmoothingDiscrete(format!(
                        "dimension {}",
                        i + 1
                    )));
                }
                let noise =
                    Normal::new(0.0, bandwidths[0]).expect("bandwidths are validated positive");
                out.push(c + noise.sample(rng));
            }
            KernelSpec::Kronecker | KernelSpec::Dirac => out.push(c),
        }
    }
    Ok(out)
}

/// Samples approximating `p(x | do(y))`, one row per scheduled intervention.
#[derive(Debug, Clone)]
pub struct DeconfoundedSample {
    /// Effect variables plus the target column holding the intervention values.
    pub data: Dataset,
    /// 1-based index of the source row behind each emitted row.
    pub provenance: Vec<usize>,
    pub effect: Vec<String>,
    pub target: String,
    pub spec: BootstrapSpec,
    /// Total ε-floor hits across all weight evaluations.
    pub floor_hits: usize,
}

/// Runs one causal bootstrap. `weights` maps an intervention value to row weights.
pub fn causal_bootstrap<F>(
    data: &Dataset,
    effect: &[&str],
    target: &str,
    weights: F,
    spec: &BootstrapSpec,
) -> Result<DeconfoundedSample, BootstrapError>
where
    F: Fn(f64) -> Result<WeightVector, WeightError> + Sync,
{
    let target_kind = data.variable(target)?.kind();
    let schedule = spec.schedule.resolve(data, target)?;
    let dims = match &spec.mode {
        SampleMode::Dirac => None,
        SampleMode::Smoothed(kernels) => {
            if let Some(&name) = effect
                .iter()
                .find(|&&n| data.variable(n).is_ok_and(|v| v.kind().is_discrete()))
            {
                return Err(BootstrapError::SmoothingDiscrete(name.to_string()));
            }
            Some(dimension_kernels(data, effect, kernels)?)
        }
    };
    let (width, records) = data.matrix(effect)?;

    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut group_of: HashMap<u64, usize> = HashMap::new();
    for (pos, &y) in schedule.iter().enumerate() {
        let g = *group_of.entry(y.to_bits()).or_insert_with(|| {
            groups.push((y, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(pos);
    }

    type Draw = (usize, usize, Vec<f64>);
    let drawn = groups
        .par_iter()
        .enumerate()
        .map(
            |(g, (y, positions))| -> Result<(Vec<Draw>, usize), BootstrapError> {
                let w = weights(*y)?;
                if w.len() != data.n_rows() {
                    return Err(DataError::LengthMismatch {
                        name: "weights".into(),
                        got: w.len(),
                        expected: data.n_rows(),
                    }
                    .into());
                }
                let sampler = WeightedIndex::new(w.values())
                    .map_err(|_| WeightError::AllZero { value: *y })?;
                let mut rng = spec.rng(g as u64);
                let mut out = Vec::with_capacity(positions.len());
                for &pos in positions {
                    let i = sampler.sample(&mut rng);
                    let center = &records[i * width..(i + 1) * width];
                    let record = match &dims {
                        None => center.to_vec(),
                        Some(dims) => smoothed_draw(center, dims, &mut rng)?,
                    };
                    out.push((pos, i, record));
                }
                Ok((out, w.floor_hits()))
            },
        )
        .collect::<Result<Vec<_>, _>>()?;

    let m = schedule.len();
    let mut provenance = vec![0; m];
    let mut emitted = vec![0.0; m * width];
    let mut floor_hits = 0;
    for (draws, hits) in drawn {
        floor_hits += hits;
        for (pos, i, record) in draws {
            provenance[pos] = i + 1;
            emitted[pos * width..(pos + 1) * width].copy_from_slice(&record);
        }
    }

    let mut out = Dataset::new(m);
    let mut offset = 0;
    for &name in effect {
        let var = data.variable(name)?;
        let w = var.width();
        let mut values = Vec::with_capacity(m * w);
        for row in emitted.chunks_exact(width) {
            values.extend_from_slice(&row[offset..offset + w]);
        }
        offset += w;
        out = out.with_variable(name, var.kind(), values)?;
    }
    if !effect.contains(&target) {
        out = out.with_variable(target, target_kind, schedule)?;
    }
    Ok(DeconfoundedSample {
        data: out,
        provenance,
        effect: effect.iter().map(|s| s.to_string()).collect(),
        target: target.to_string(),
        spec: spec.clone(),
        floor_hits,
    })
}

/// Assigns each emitted row a fold in `1..=k` so that all copies of a source
/// row share a fold. Source rows are shuffled, then dealt round-robin.
pub fn split_by_provenance(
    provenance: &[usize],
    k: usize,
    seed: u64,
) -> Result<Vec<usize>, BootstrapError> {
    let mut sources: Vec<usize> = provenance.to_vec();
    sources.sort_unstable();
    sources.dedup();
    if k < 2 || k > sources.len() {
        return Err(BootstrapError::InvalidSplit {
            sources: sources.len(),
            folds: k,
        });
    }
    sources.shuffle(&mut ChaCha20Rng::seed_from_u64(seed));
    let fold: HashMap<usize, usize> = sources
        .iter()
        .enumerate()
        .map(|(j, &s)| (s, j % k + 1))
        .collect();
    Ok(provenance.iter().map(|p| fold[p]).collect())
}

//! Data generators for the experiments: Gaussian mixtures with back-door and
//! front-door confounding, brightness-confounded MNIST digits, confound
//! resampling of a multi-lab feature table, and a synthetic for the Tikka graph.
//!
//! Every sample belongs to an environment `e ∈ {1, 2, 3}`: environments 1 and 2
//! are confounded, environment 3 is not. Discrete variables take values in
//! `{1, 2}` (or `{1, 2, 3}`), and [`Bern12`] emits 1 with probability θ, else 2.

use std::f64::consts::PI;
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rand_distr::Normal;
use thiserror::Error;

use crate::data::{DataError, Dataset};
use crate::resample::grouped_counts;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("environment must be 1, 2 or 3, got {0}")]
    InvalidEnvironment(u8),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: bad magic number {got:#010x}, expected {expected:#010x}")]
    BadMagic {
        file: String,
        expected: u32,
        got: u32,
    },
    #[error("{file}: truncated ({got} bytes, need {needed})")]
    Truncated {
        file: String,
        got: usize,
        needed: usize,
    },
    #[error("{images} images but {labels} labels")]
    CountMismatch { images: usize, labels: usize },
    #[error("images are {rows}×{cols}, expected 28×28")]
    ImageSize { rows: usize, cols: usize },
    #[error("image pool exhausted: need more than the {available} images of digit {digit}")]
    ImagePoolExhausted { digit: u8, available: usize },
    #[error("no rows with {column} = {value} and y = {class}")]
    MissingStratum {
        column: String,
        value: i64,
        class: i64,
    },
    #[error("feature table: {0}")]
    FeatureTable(String),
}

/// Bernoulli variable on `{1, 2}`: 1 with probability θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bern12 {
    theta: f64,
}

impl Bern12 {
    pub fn new(theta: f64) -> Result<Self, SynthError> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(SynthError::InvalidProbability(theta));
        }
        Ok(Bern12 { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

impl Distribution<i64> for Bern12 {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        if rng.random::<f64>() < self.theta {
            1
        } else {
            2
        }
    }
}

fn bern<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> i64 {
    Bern12 { theta }.sample(rng)
}

/// One environment sample to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvSpec {
    pub environment: u8,
    pub n: usize,
    pub seed: u64,
}

impl EnvSpec {
    pub fn new(environment: u8, n: usize, seed: u64) -> Result<Self, SynthError> {
        if !(1..=3).contains(&environment) {
            return Err(SynthError::InvalidEnvironment(environment));
        }
        Ok(EnvSpec {
            environment,
            n,
            seed,
        })
    }

    /// Spec for environment `e` of replicate `replicate`, with a seed derived
    /// from `master` so that every (replicate, environment) pair gets its own stream.
    pub fn derived(
        master: u64,
        replicate: u64,
        environment: u8,
        n: usize,
    ) -> Result<Self, SynthError> {
        EnvSpec::new(
            environment,
            n,
            derive_seed(master, replicate, environment as u64),
        )
    }

    pub fn confounded(&self) -> bool {
        self.environment != 3
    }

    fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

/// A seed for `slot ∈ 0..4` of a replicate, drawn from its own ChaCha20 stream of `master`.
pub fn derive_seed(master: u64, replicate: u64, slot: u64) -> u64 {
    assert!(slot < 4, "four slots per replicate");
    let mut rng = ChaCha20Rng::seed_from_u64(master);
    rng.set_stream(replicate * 4 + slot);
    rng.next_u64()
}

fn env_column(d: Dataset, spec: &EnvSpec) -> Result<Dataset, DataError> {
    d.with_discrete("e", 3, vec![spec.environment as i64; spec.n])
}

/// Parameters of the Gaussian mixture model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussModel {
    pub p: f64,
    /// `q(1), q(2)` in confounded environments; `Y | U` is Bern12(1/2) in environment 3.
    pub q: [f64; 2],
    pub r: [f64; 2],
    pub mu1: [f64; 2],
    pub mu2: [f64; 2],
}

impl GaussModel {
    pub const BACKDOOR: GaussModel = GaussModel {
        p: 0.85,
        q: [0.95, 0.05],
        r: [1.0, 0.0],
        mu1: [1.5, -1.5],
        mu2: [2.4, -2.4],
    };

    pub const FRONTDOOR: GaussModel = GaussModel {
        p: 0.5,
        q: [0.98, 0.02],
        r: [0.90, 0.10],
        mu1: [1.5, -1.5],
        mu2: [2.4, -2.4],
    };

    /// Samples `(e, u, y, z, x)` with `x = (x₁, x₂)`:
    /// `U ~ Bern12(p)`, `Y | U ~ Bern12(q(u))`, `Z | Y ~ Bern12(r(y))`,
    /// `X₁ | Z ~ N(μ₁(z), 1)`, `X₂ | U ~ N(μ₂(u), 1)`.
    pub fn generate(&self, spec: &EnvSpec) -> Result<Dataset, SynthError> {
        let mut rng = spec.rng();
        let unit = Normal::new(0.0, 1.0).expect("unit normal");
        let (mut u, mut y, mut z, mut x) = (vec![], vec![], vec![], vec![]);
        for _ in 0..spec.n {
            let ui = bern(self.p, &mut rng);
            let q = if spec.confounded() {
                self.q[(ui - 1) as usize]
            } else {
                0.5
            };
            let yi = bern(q, &mut rng);
            let zi = bern(self.r[(yi - 1) as usize], &mut rng);
            x.push(self.mu1[(zi - 1) as usize] + unit.sample(&mut rng));
            x.push(self.mu2[(ui - 1) as usize] + unit.sample(&mut rng));
            u.push(ui);
            y.push(yi);
            z.push(zi);
        }
        let d = env_column(Dataset::new(spec.n), spec)?
            .with_discrete("u", 2, u)?
            .with_discrete("y", 2, y)?
            .with_discrete("z", 2, z)?
            .with_continuous_matrix("x", 2, x)?;
        Ok(d)
    }
}

/// Gaussian mixture with back-door confounding through the observed `u`.
pub fn gen_gauss_backdoor(spec: &EnvSpec) -> Result<Dataset, SynthError> {
    GaussModel::BACKDOOR.generate(spec)
}

/// Gaussian mixture with front-door confounding; `u` is emitted but meant to be withheld.
pub fn gen_gauss_frontdoor(spec: &EnvSpec) -> Result<Dataset, SynthError> {
    GaussModel::FRONTDOOR.generate(spec)
}

pub const IMAGE_SIDE: usize = 28;
pub const IMAGE_PIXELS: usize = IMAGE_SIDE * IMAGE_SIDE;
const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

/// Parses an IDX file with the given magic number into its dimensions and payload.
pub fn parse_idx<'a>(
    bytes: &'a [u8],
    magic: u32,
    file: &str,
) -> Result<(Vec<usize>, &'a [u8]), SynthError> {
    let truncated = |needed: usize| SynthError::Truncated {
        file: file.to_string(),
        got: bytes.len(),
        needed,
    };
    let word = |i: usize| -> Result<u32, SynthError> {
        bytes
            .get(i..i + 4)
            .map(|b| u32::from_be_bytes(b.try_into().expect("four bytes")))
            .ok_or_else(|| truncated(i + 4))
    };
    let got = word(0)?;
    if got != magic {
        return Err(SynthError::BadMagic {
            file: file.to_string(),
            expected: magic,
            got,
        });
    }
    let ndims = (magic & 0xff) as usize;
    let dims = (0..ndims)
        .map(|k| word(4 + 4 * k).map(|v| v as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let header = 4 + 4 * ndims;
    let needed = header + dims.iter().product::<usize>();
    if bytes.len() < needed {
        return Err(truncated(needed));
    }
    Ok((dims, &bytes[header..needed]))
}

/// MNIST images of the digits 2 and 6.
#[derive(Debug, Clone, PartialEq)]
pub struct MnistImages {
    labels: Vec<u8>,
    pixels: Vec<u8>,
}

impl MnistImages {
    /// Keeps only digits 2 and 6 from raw IDX payloads.
    pub fn from_idx(images: &[u8], labels: &[u8]) -> Result<Self, SynthError> {
        let (idims, ipix) = parse_idx(images, IMAGES_MAGIC, "images")?;
        let (ldims, lab) = parse_idx(labels, LABELS_MAGIC, "labels")?;
        if idims[1] != IMAGE_SIDE || idims[2] != IMAGE_SIDE {
            return Err(SynthError::ImageSize {
                rows: idims[1],
                cols: idims[2],
            });
        }
        if idims[0] != ldims[0] {
            return Err(SynthError::CountMismatch {
                images: idims[0],
                labels: ldims[0],
            });
        }
        let mut out = MnistImages {
            labels: Vec::new(),
            pixels: Vec::new(),
        };
        for (i, &l) in lab.iter().enumerate() {
            if l == 2 || l == 6 {
                out.labels.push(l);
                out.pixels
                    .extend_from_slice(&ipix[i * IMAGE_PIXELS..(i + 1) * IMAGE_PIXELS]);
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> u8 {
        self.labels[i]
    }

    pub fn image(&self, i: usize) -> &[u8] {
        &self.pixels[i * IMAGE_PIXELS..(i + 1) * IMAGE_PIXELS]
    }

    pub fn count(&self, digit: u8) -> usize {
        self.labels.iter().filter(|&&l| l == digit).count()
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, SynthError> {
    std::fs::read(path).map_err(|e| SynthError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Reads MNIST IDX image and label files, keeping digits 2 and 6.
pub fn load_mnist_idx(images: &Path, labels: &Path) -> Result<MnistImages, SynthError> {
    MnistImages::from_idx(&read_file(images)?, &read_file(labels)?)
}

/// Indices of the images one sample may draw from, per digit.
#[derive(Debug, Clone, PartialEq)]
pub struct ImagePool {
    twos: Vec<usize>,
    sixes: Vec<usize>,
}

impl ImagePool {
    pub fn all(mnist: &MnistImages) -> Self {
        let pick = |d: u8| (0..mnist.len()).filter(|&i| mnist.label(i) == d).collect();
        ImagePool {
            twos: pick(2),
            sixes: pick(6),
        }
    }

    /// Shuffles each digit's images and deals them into `parts` disjoint pools.
    pub fn partition(mnist: &MnistImages, parts: usize, seed: u64) -> Vec<ImagePool> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let all = ImagePool::all(mnist);
        let split = |mut v: Vec<usize>, rng: &mut ChaCha20Rng| -> Vec<Vec<usize>> {
            v.shuffle(rng);
            let size = v.len() / parts;
            (0..parts)
                .map(|k| v[k * size..(k + 1) * size].to_vec())
                .collect()
        };
        let twos = split(all.twos, &mut rng);
        let sixes = split(all.sixes, &mut rng);
        twos.into_iter()
            .zip(sixes)
            .map(|(twos, sixes)| ImagePool { twos, sixes })
            .collect()
    }

    pub fn len(&self, digit: u8) -> usize {
        if digit == 2 {
            self.twos.len()
        } else {
            self.sixes.len()
        }
    }

    fn shuffled(&self, rng: &mut ChaCha20Rng) -> ImageDraws {
        let mut twos = self.twos.clone();
        let mut sixes = self.sixes.clone();
        twos.shuffle(rng);
        sixes.shuffle(rng);
        ImageDraws { twos, sixes }
    }
}

/// Draws images without replacement.
struct ImageDraws {
    twos: Vec<usize>,
    sixes: Vec<usize>,
}

impl ImageDraws {
    /// An unused image of digit 2 for class 1, digit 6 for class 2.
    fn take(&mut self, class: i64, total: &ImagePool) -> Result<usize, SynthError> {
        let (digit, stack) = if class == 1 {
            (2, &mut self.twos)
        } else {
            (6, &mut self.sixes)
        };
        stack.pop().ok_or(SynthError::ImagePoolExhausted {
            digit,
            available: total.len(digit),
        })
    }
}

/// `min(x + offset, 255)` on every pixel.
pub fn brighten(image: &[u8], offset: u8) -> Vec<f64> {
    image
        .iter()
        .map(|&p| p.saturating_add(offset) as f64)
        .collect()
}

/// Back-door MNIST: `Y ~ Bern12(1/2)`, `U | Y ~ Bern12(q(y))` with
/// `q(1) = 0.95, q(2) = 0.05` when confounded and `1/2` otherwise; the image is
/// a fresh 2 (y = 1) or 6 (y = 2), brightened by 100 when `u = 1`.
/// Columns `(e, u, y, x)` with `x` the 784 pixel values.
pub fn gen_mnist_backdoor(
    mnist: &MnistImages,
    pool: &ImagePool,
    spec: &EnvSpec,
) -> Result<Dataset, SynthError> {
    let mut rng = spec.rng();
    let mut draws = pool.shuffled(&mut rng);
    let (mut u, mut y, mut x) = (vec![], vec![], Vec::with_capacity(spec.n * IMAGE_PIXELS));
    for _ in 0..spec.n {
        let yi = bern(0.5, &mut rng);
        let q = match (spec.confounded(), yi) {
            (true, 1) => 0.95,
            (true, _) => 0.05,
            (false, _) => 0.5,
        };
        let ui = bern(q, &mut rng);
        let img = draws.take(yi, pool)?;
        x.extend(brighten(mnist.image(img), if ui == 1 { 100 } else { 0 }));
        u.push(ui);
        y.push(yi);
    }
    Ok(env_column(Dataset::new(spec.n), spec)?
        .with_discrete("u", 2, u)?
        .with_discrete("y", 2, y)?
        .with_continuous_matrix("x", IMAGE_PIXELS, x)?)
}

/// Background brightness `v(u) = 100 · (arctan(u/5)/π + 1/2)`, in `(0, 100)`.
pub fn frontdoor_brightness(u: f64) -> f64 {
    100.0 * ((u / 5.0).atan() / PI + 0.5)
}

/// `qᵘ / (qᵘ + (1 − q)ᵘ)`, evaluated stably as a logistic function.
pub fn frontdoor_q(q: f64, u: f64) -> f64 {
    let logit = u * (q.ln() - (1.0 - q).ln());
    1.0 / (1.0 + (-logit).exp())
}

/// Front-door MNIST: `U ~ N(0, 5)`, `Y | U ~ Bern12(q(u))` with `q = 0.8`
/// when confounded and `0.5` otherwise, `Z | Y ~ Bern12(r(y))` with
/// `r(1) = 0.95, r(2) = 0.05`; the image is a fresh 2 (z = 1) or 6 (z = 2)
/// brightened by `v(u)`. Columns `(e, u, y, z, x)`.
pub fn gen_mnist_frontdoor(
    mnist: &MnistImages,
    pool: &ImagePool,
    spec: &EnvSpec,
) -> Result<Dataset, SynthError> {
    let mut rng = spec.rng();
    let mut draws = pool.shuffled(&mut rng);
    let confounder = Normal::new(0.0, 5.0).expect("valid normal");
    let q = if spec.confounded() { 0.8 } else { 0.5 };
    let (mut u, mut y, mut z, mut x) = (
        vec![],
        vec![],
        vec![],
        Vec::with_capacity(spec.n * IMAGE_PIXELS),
    );
    for _ in 0..spec.n {
        let ui: f64 = confounder.sample(&mut rng);
        let yi = bern(frontdoor_q(q, ui), &mut rng);
        let zi = bern(if yi == 1 { 0.95 } else { 0.05 }, &mut rng);
        let img = draws.take(zi, pool)?;
        x.extend(brighten(
            mnist.image(img),
            frontdoor_brightness(ui).round() as u8,
        ));
        u.push(ui);
        y.push(yi);
        z.push(zi);
    }
    Ok(env_column(Dataset::new(spec.n), spec)?
        .with_continuous("u", u)?
        .with_discrete("y", 2, y)?
        .with_discrete("z", 2, z)?
        .with_continuous_matrix("x", IMAGE_PIXELS, x)?)
}

/// Lab proportions `(id 1, id 2, id 3)` for class `y` in an environment, in per mille.
pub fn parkinsons_proportions(confounded: bool, class: i64) -> [u64; 3] {
    match (confounded, class) {
        (true, 1) => [50, 50, 900],
        (true, _) => [900, 50, 50],
        (false, _) => [475, 50, 475],
    }
}

/// Resamples a feature table (columns `x`, `y` in {1, 2}, `dataset_id` in
/// {1, 2, 3}) with replacement into `n` balanced rows whose lab mix per class
/// follows [`parkinsons_proportions`]. Counts per cell use largest remainders.
pub fn confound_resample_parkinsons(
    features: &Dataset,
    spec: &EnvSpec,
) -> Result<Dataset, SynthError> {
    let ys = features.scalar("y")?;
    let ids = features.scalar("dataset_id")?;
    let mut rng = spec.rng();
    let class_counts = grouped_counts(&[1.0, 2.0], spec.n);
    let mut rows = Vec::with_capacity(spec.n);
    for (class, class_n) in class_counts {
        let class = class as i64;
        let props = parkinsons_proportions(spec.confounded(), class);
        for (k, count) in apportion(&props, class_n).into_iter().enumerate() {
            let id = k as i64 + 1;
            let stratum: Vec<usize> = (0..features.n_rows())
                .filter(|&i| ys[i] as i64 == class && ids[i] as i64 == id)
                .collect();
            if stratum.is_empty() {
                return Err(SynthError::MissingStratum {
                    column: "dataset_id".into(),
                    value: id,
                    class,
                });
            }
            rows.extend((0..count).map(|_| stratum[rng.random_range(0..stratum.len())]));
        }
    }
    rows.shuffle(&mut rng);
    let out = features.select_rows(&rows)?;
    let mut d = env_column(Dataset::new(spec.n), spec)?;
    for var in out.variables() {
        d = d.with_variable(var.name(), var.kind(), var.values().to_vec())?;
    }
    Ok(d)
}

/// Largest-remainder integer counts summing to `total`, proportional to
/// integer `weights`; ties go to the earlier entry.
pub fn apportion(weights: &[u64], total: usize) -> Vec<usize> {
    let sum: u64 = weights.iter().sum();
    let scaled: Vec<u128> = weights.iter().map(|&w| w as u128 * total as u128).collect();
    let mut counts: Vec<usize> = scaled.iter().map(|s| (s / sum as u128) as usize).collect();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        (scaled[b] % sum as u128)
            .cmp(&(scaled[a] % sum as u128))
            .then(a.cmp(&b))
    });
    let missing = total - counts.iter().sum::<usize>();
    for &i in order.iter().take(missing) {
        counts[i] += 1;
    }
    counts
}

/// Reads a feature table CSV: every column other than `y` and `dataset_id`
/// becomes one dimension of `x`, in file order.
pub fn load_feature_table(path: &Path) -> Result<Dataset, SynthError> {
    let io_err = |e: csv::Error| SynthError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut reader = csv::Reader::from_path(path).map_err(io_err)?;
    let headers = reader.headers().map_err(io_err)?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| SynthError::FeatureTable(format!("missing column `{name}`")))
    };
    let (yc, idc) = (find("y")?, find("dataset_id")?);
    let feature_cols: Vec<usize> = (0..headers.len())
        .filter(|&c| c != yc && c != idc)
        .collect();
    if feature_cols.is_empty() {
        return Err(SynthError::FeatureTable("no feature columns".into()));
    }
    let (mut x, mut y, mut id) = (vec![], vec![], vec![]);
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(io_err)?;
        let num = |c: usize| -> Result<f64, SynthError> {
            record[c].trim().parse::<f64>().map_err(|_| {
                SynthError::FeatureTable(format!(
                    "row {}: `{}` in column `{}` is not a number",
                    line + 1,
                    &record[c],
                    &headers[c]
                ))
            })
        };
        for &c in &feature_cols {
            x.push(num(c)?);
        }
        y.push(num(yc)? as i64);
        id.push(num(idc)? as i64);
    }
    let n = y.len();
    Ok(Dataset::new(n)
        .with_continuous_matrix("x", feature_cols.len(), x)?
        .with_discrete("y", 2, y)?
        .with_discrete("dataset_id", 3, id)?)
}

/// A synthetic stand-in for the three-lab voice feature table: 9 features
/// whose means depend on the class and, more strongly, on the lab.
pub fn gen_parkinsons_standin(rows_per_cell: usize, seed: u64) -> Result<Dataset, SynthError> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let class_shift = [0.6, -0.4, 0.5, 0.3, -0.5, 0.4, 0.2, -0.3, 0.5];
    let lab_shift = [[2.0, -1.0, 0.5], [-1.5, 1.0, 2.0], [0.0, 2.0, -2.0]];
    let (mut x, mut y, mut id) = (vec![], vec![], vec![]);
    for (lab, shift) in lab_shift.iter().enumerate() {
        for class in 1..=2 {
            for _ in 0..rows_per_cell {
                for j in 0..9 {
                    let c = if class == 2 { class_shift[j] } else { 0.0 };
                    x.push(c + shift[j % 3] + unit.sample(&mut rng));
                }
                y.push(class);
                id.push(lab as i64 + 1);
            }
        }
    }
    let n = y.len();
    Ok(Dataset::new(n)
        .with_continuous_matrix("x", 9, x)?
        .with_discrete("y", 2, y)?
        .with_discrete("dataset_id", 3, id)?)
}

/// Synthetic for the graph `W → Y, W → Z, Y → Z, Z → X, W → X` with a latent
/// `U → Y, U → X`: `W ~ Bern12(1/2)`, `U ~ Bern12(1/2)`, `Y | U, W` strongly
/// confounded by `U` (independent of `U` in environment 3), `Z | W, Y`,
/// `X₁ ~ N(±1.5 by z + ±0.5 by w, 1)`, `X₂ ~ N(±2.4 by u, 1)`.
/// Columns `(e, w, u, y, z, x)`.
pub fn gen_tikka(spec: &EnvSpec) -> Result<Dataset, SynthError> {
    let mut rng = spec.rng();
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let (mut w, mut u, mut y, mut z, mut x) = (vec![], vec![], vec![], vec![], vec![]);
    for _ in 0..spec.n {
        let wi = bern(0.5, &mut rng);
        let ui = bern(0.5, &mut rng);
        let q = match (spec.confounded(), ui, wi) {
            (true, 1, 1) => 0.97,
            (true, 1, _) => 0.90,
            (true, _, 1) => 0.10,
            (true, _, _) => 0.03,
            (false, _, 1) => 0.6,
            (false, _, _) => 0.4,
        };
        let yi = bern(q, &mut rng);
        let r = match (yi, wi) {
            (1, 1) => 0.90,
            (1, _) => 0.85,
            (_, 1) => 0.10,
            (_, _) => 0.15,
        };
        let zi = bern(r, &mut rng);
        let sign = |v: i64| if v == 1 { 1.0 } else { -1.0 };
        x.push(1.5 * sign(zi) + 0.5 * sign(wi) + unit.sample(&mut rng));
        x.push(2.4 * sign(ui) + unit.sample(&mut rng));
        w.push(wi);
        u.push(ui);
        y.push(yi);
        z.push(zi);
    }
    Ok(env_column(Dataset::new(spec.n), spec)?
        .with_discrete("w", 2, w)?
        .with_discrete("u", 2, u)?
        .with_discrete("y", 2, y)?
        .with_discrete("z", 2, z)?
        .with_continuous_matrix("x", 2, x)?)
}

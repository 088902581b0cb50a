//! Kernel density estimates over subsets of dataset variables.
//!
//! An estimate over variables `v₁..v_k` is the product-kernel KDE
//! `p̂(v) = (1/N) Σₙ Πⱼ K[vⱼ − vⱼₙ]`. Discrete variables use the Kronecker
//! delta, continuous ones a Gaussian with one bandwidth per dimension.
//! All-Kronecker estimates are evaluated exactly from a count table.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::data::{DataError, Dataset, VarKind};

/// Floor applied to any density used as a denominator.
pub const DENSITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("cannot estimate a density from an empty dataset")]
    EmptyDataset,
    #[error("kernel {kernel} cannot be used for `{variable}` ({kind})")]
    KindMismatch {
        variable: String,
        kernel: String,
        kind: VarKind,
    },
    #[error("the Dirac kernel has no pointwise density (used for `{0}`)")]
    DiracDensity(String),
    #[error("point has {got} values, estimate expects {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("conditioning value has zero estimated density")]
    ZeroDenominator,
    #[error("variable `{0}` appears in both the target and the conditioning set")]
    OverlappingVariables(String),
    #[error("column has no spread; bandwidth is undefined")]
    DegenerateColumn,
    #[error("bandwidth must be positive and finite, got {0}")]
    InvalidBandwidth(f64),
}

/// Kernel attached to one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// Indicator `1[v = vₙ]`; discrete variables only.
    Kronecker,
    /// Product of per-dimension normal densities; continuous variables only.
    Gaussian { bandwidths: Vec<f64> },
    /// Point mass; continuous variables only. Usable for resampling, not for evaluation.
    Dirac,
}

impl KernelSpec {
    pub fn gaussian(bandwidth: f64) -> Self {
        KernelSpec::Gaussian {
            bandwidths: vec![bandwidth],
        }
    }

    fn label(&self) -> &'static str {
        match self {
            KernelSpec::Kronecker => "kronecker",
            KernelSpec::Gaussian { .. } => "gaussian",
            KernelSpec::Dirac => "dirac",
        }
    }

    /// Checks that this kernel may be attached to a variable of `kind`.
    pub fn check(&self, variable: &str, kind: VarKind) -> Result<(), DensityError> {
        let mismatch = || DensityError::KindMismatch {
            variable: variable.to_string(),
            kernel: self.label().to_string(),
            kind,
        };
        match (self, kind) {
            (KernelSpec::Kronecker, VarKind::Discrete { .. }) => Ok(()),
            (KernelSpec::Dirac, VarKind::Continuous { .. }) => Ok(()),
            (KernelSpec::Gaussian { bandwidths }, VarKind::Continuous { dimension }) => {
                if bandwidths.len() != dimension {
                    return Err(mismatch());
                }
                match bandwidths.iter().find(|h| !(h.is_finite() && **h > 0.0)) {
                    Some(&h) => Err(DensityError::InvalidBandwidth(h)),
                    None => Ok(()),
                }
            }
            _ => Err(mismatch()),
        }
    }

    /// `K[a − b]` for one variable's values.
    pub fn value(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            KernelSpec::Kronecker | KernelSpec::Dirac => {
                if a == b {
                    1.0
                } else {
                    0.0
                }
            }
            KernelSpec::Gaussian { bandwidths } => a
                .iter()
                .zip(b)
                .zip(bandwidths)
                .map(|((x, c), h)| normal_pdf((x - c) / h) / h)
                .product(),
        }
    }
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Silverman's reference bandwidth `0.9 · min(sd, IQR/1.34) · N^(−1/5)`.
///
/// When the interquartile range is zero but the column still varies, the
/// standard deviation alone is used.
pub fn silverman_bandwidth(column: &[f64]) -> Result<f64, DensityError> {
    let n = column.len();
    if n < 2 || column.iter().all(|&v| v == column[0]) {
        return Err(DensityError::DegenerateColumn);
    }
    let nf = n as f64;
    let mean = column.iter().sum::<f64>() / nf;
    let sd = (column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0)).sqrt();
    let mut sorted = column.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * nf.powf(-0.2))
}

/// Linear-interpolation quantile of sorted data.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-variable kernel choice: explicit overrides, otherwise Kronecker for
/// discrete variables and Silverman-bandwidth Gaussians for continuous ones.
#[derive(Debug, Clone, Default)]
pub struct Kernels {
    overrides: HashMap<String, KernelSpec>,
}

impl Kernels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, variable: &str, kernel: KernelSpec) -> Self {
        self.overrides.insert(variable.to_string(), kernel);
        self
    }

    pub fn overrides(&self) -> &HashMap<String, KernelSpec> {
        &self.overrides
    }

    pub fn resolve(&self, data: &Dataset, variable: &str) -> Result<KernelSpec, DensityError> {
        let var = data.variable(variable)?;
        let kernel = match self.overrides.get(variable) {
            Some(k) => k.clone(),
            None => match var.kind() {
                VarKind::Discrete { .. } => KernelSpec::Kronecker,
                VarKind::Continuous { dimension } => {
                    let n = data.n_rows();
                    let mut bandwidths = Vec::with_capacity(dimension);
                    let mut column = Vec::with_capacity(n);
                    for d in 0..dimension {
                        column.clear();
                        column.extend((0..n).map(|i| var.row(i)[d]));
                        bandwidths.push(silverman_bandwidth(&column)?);
                    }
                    KernelSpec::Gaussian { bandwidths }
                }
            },
        };
        kernel.check(variable, var.kind())?;
        Ok(kernel)
    }
}

#[derive(Debug, Clone, Copy)]
enum DimKernel {
    Indicator,
    Gaussian(f64),
}

/// A fitted product-kernel KDE. Holds its own copy of the relevant columns.
#[derive(Debug, Clone)]
pub struct DensityEstimate {
    variables: Vec<String>,
    kernels: Vec<KernelSpec>,
    dims: Vec<DimKernel>,
    n: usize,
    points: Vec<f64>,
    counts: Option<HashMap<Vec<i64>, usize>>,
}

/// Fits `p̂(variables)` on every row of `data`.
pub fn fit_kde(
    data: &Dataset,
    variables: &[&str],
    kernels: &Kernels,
) -> Result<DensityEstimate, DensityError> {
    if data.is_empty() {
        return Err(DensityError::EmptyDataset);
    }
    let mut specs = Vec::with_capacity(variables.len());
    let mut dims = Vec::new();
    for name in variables {
        let spec = kernels.resolve(data, name)?;
        match &spec {
            KernelSpec::Kronecker => dims.push(DimKernel::Indicator),
            KernelSpec::Gaussian { bandwidths } => {
                dims.extend(bandwidths.iter().map(|&h| DimKernel::Gaussian(h)))
            }
            KernelSpec::Dirac => return Err(DensityError::DiracDensity(name.to_string())),
        }
        specs.push(spec);
    }
    let (_, points) = data.matrix(variables)?;
    let width = dims.len();
    let counts = if dims.iter().all(|d| matches!(d, DimKernel::Indicator)) {
        let mut table: HashMap<Vec<i64>, usize> = HashMap::new();
        if width == 0 {
            table.insert(Vec::new(), data.n_rows());
        } else {
            for row in points.chunks_exact(width) {
                *table
                    .entry(row.iter().map(|&v| v as i64).collect())
                    .or_insert(0) += 1;
            }
        }
        Some(table)
    } else {
        None
    };
    Ok(DensityEstimate {
        variables: variables.iter().map(|s| s.to_string()).collect(),
        kernels: specs,
        dims,
        n: data.n_rows(),
        points,
        counts,
    })
}

impl DensityEstimate {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn kernels(&self) -> &[KernelSpec] {
        &self.kernels
    }

    /// Number of values in an evaluation point.
    pub fn width(&self) -> usize {
        self.dims.len()
    }

    pub fn n_samples(&self) -> usize {
        self.n
    }

    /// Evaluates the estimate at `point`, the concatenated values of its variables.
    pub fn eval(&self, point: &[f64]) -> Result<f64, DensityError> {
        let width = self.width();
        if point.len() != width {
            return Err(DensityError::DimensionMismatch {
                got: point.len(),
                expected: width,
            });
        }
        if width == 0 {
            return Ok(1.0);
        }
        if let Some(counts) = &self.counts {
            if point.iter().any(|v| v.fract() != 0.0) {
                return Ok(0.0);
            }
            let key: Vec<i64> = point.iter().map(|&v| v as i64).collect();
            return Ok(counts.get(&key).copied().unwrap_or(0) as f64 / self.n as f64);
        }
        let mut total = 0.0;
        'rows: for row in self.points.chunks_exact(width) {
            let mut k = 1.0;
            for ((dim, &p), &c) in self.dims.iter().zip(point).zip(row) {
                match *dim {
                    DimKernel::Indicator => {
                        if p != c {
                            continue 'rows;
                        }
                    }
                    DimKernel::Gaussian(h) => k *= normal_pdf((p - c) / h) / h,
                }
            }
            total += k;
        }
        Ok(total / self.n as f64)
    }
}

/// Counts how often a denominator hit [`DENSITY_FLOOR`] while its numerator was positive.
#[derive(Debug, Default)]
pub struct FloorCounter(AtomicUsize);

impl FloorCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn count(&self) -> usize {
        self.0.load(Ordering::Relaxed)
    }
}

/// `numerator / max(denominator, ε)`, counting floor hits that mattered.
pub fn floored_ratio(numerator: f64, denominator: f64, floor: &FloorCounter) -> f64 {
    if denominator < DENSITY_FLOOR {
        if numerator > 0.0 {
            floor.record();
        }
        numerator / DENSITY_FLOOR
    } else {
        numerator / denominator
    }
}

/// `p̂(target | given)` as the ratio of a joint and a marginal KDE.
#[derive(Debug, Clone)]
pub struct ConditionalEstimate {
    joint: DensityEstimate,
    marginal: DensityEstimate,
    target_width: usize,
}

/// Fits `p̂(target | given)`.
pub fn conditional(
    data: &Dataset,
    target: &[&str],
    given: &[&str],
    kernels: &Kernels,
) -> Result<ConditionalEstimate, DensityError> {
    if let Some(v) = target.iter().find(|t| given.contains(t)) {
        return Err(DensityError::OverlappingVariables(v.to_string()));
    }
    let joint_vars: Vec<&str> = target.iter().chain(given).copied().collect();
    let joint = fit_kde(data, &joint_vars, kernels)?;
    let marginal = fit_kde(data, given, kernels)?;
    let target_width = joint.width() - marginal.width();
    Ok(ConditionalEstimate {
        joint,
        marginal,
        target_width,
    })
}

impl ConditionalEstimate {
    pub fn joint(&self) -> &DensityEstimate {
        &self.joint
    }

    pub fn marginal(&self) -> &DensityEstimate {
        &self.marginal
    }

    fn parts(&self, target: &[f64], given: &[f64]) -> Result<(f64, f64), DensityError> {
        if target.len() != self.target_width {
            return Err(DensityError::DimensionMismatch {
                got: target.len(),
                expected: self.target_width,
            });
        }
        let mut point = Vec::with_capacity(self.joint.width());
        point.extend_from_slice(target);
        point.extend_from_slice(given);
        Ok((self.joint.eval(&point)?, self.marginal.eval(given)?))
    }

    /// Strict evaluation: an exactly-zero marginal is an error.
    pub fn eval(&self, target: &[f64], given: &[f64]) -> Result<f64, DensityError> {
        let (num, den) = self.parts(target, given)?;
        if den == 0.0 {
            return Err(DensityError::ZeroDenominator);
        }
        Ok(num / den)
    }

    /// Evaluation under the ε-floor policy.
    pub fn eval_floored(
        &self,
        target: &[f64],
        given: &[f64],
        floor: &FloorCounter,
    ) -> Result<f64, DensityError> {
        let (num, den) = self.parts(target, given)?;
        Ok(floored_ratio(num, den, floor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn yu_rows() -> Dataset {
        Dataset::new(6)
            .with_discrete("y", 2, vec![1, 1, 1, 2, 2, 2])
            .unwrap()
            .with_discrete("u", 2, vec![1, 1, 2, 1, 2, 2])
            .unwrap()
    }

    #[test]
    fn single_gaussian_point() {
        let d = Dataset::new(1).with_continuous("x", vec![0.0]).unwrap();
        let k = Kernels::new().with("x", KernelSpec::gaussian(1.0));
        let est = fit_kde(&d, &["x"], &k).unwrap();
        assert!((est.eval(&[0.0]).unwrap() - 0.398_942_280_401_432_7).abs() < 1e-12);
    }

    #[test]
    fn two_gaussian_points_at_midpoint() {
        let d = Dataset::new(2)
            .with_continuous("x", vec![-1.0, 1.0])
            .unwrap();
        let k = Kernels::new().with("x", KernelSpec::gaussian(1.0));
        let est = fit_kde(&d, &["x"], &k).unwrap();
        let expected = (2.0 * PI).powf(-0.5) * (-0.5f64).exp();
        assert!((est.eval(&[0.0]).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.24197).abs() < 1e-5);
    }

    #[test]
    fn kronecker_frequencies() {
        let d = Dataset::new(3)
            .with_discrete("c", 3, vec![1, 1, 2])
            .unwrap();
        let est = fit_kde(&d, &["c"], &Kernels::new()).unwrap();
        assert_eq!(est.eval(&[1.0]).unwrap(), 2.0 / 3.0);
        assert_eq!(est.eval(&[2.0]).unwrap(), 1.0 / 3.0);
        assert_eq!(est.eval(&[3.0]).unwrap(), 0.0);
        assert!(matches!(
            est.eval(&[1.0, 2.0]),
            Err(DensityError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn uniform_empirical_joint() {
        let d = Dataset::new(4)
            .with_discrete("y", 2, vec![1, 1, 2, 2])
            .unwrap()
            .with_discrete("u", 2, vec![1, 2, 1, 2])
            .unwrap();
        let est = fit_kde(&d, &["y", "u"], &Kernels::new()).unwrap();
        for y in [1.0, 2.0] {
            for u in [1.0, 2.0] {
                assert_eq!(est.eval(&[y, u]).unwrap(), 0.25);
            }
        }
    }

    #[test]
    fn kernel_kind_mismatch() {
        let d = yu_rows();
        let k = Kernels::new().with("y", KernelSpec::gaussian(1.0));
        assert!(matches!(
            fit_kde(&d, &["y"], &k),
            Err(DensityError::KindMismatch { .. })
        ));
        assert_eq!(
            fit_kde(
                &Dataset::new(0).with_discrete("y", 2, vec![]).unwrap(),
                &["y"],
                &Kernels::new()
            )
            .unwrap_err(),
            DensityError::EmptyDataset
        );
        let c = Dataset::new(2)
            .with_continuous("x", vec![0.0, 1.0])
            .unwrap();
        let k = Kernels::new().with("x", KernelSpec::Dirac);
        assert!(matches!(
            fit_kde(&c, &["x"], &k),
            Err(DensityError::DiracDensity(_))
        ));
    }

    #[test]
    fn conditional_count_ratio() {
        let d = yu_rows();
        let c = conditional(&d, &["y"], &["u"], &Kernels::new()).unwrap();
        assert!((c.eval(&[1.0], &[1.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.eval(&[1.0], &[2.0]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(
            c.eval(&[1.0], &[3.0]).unwrap_err(),
            DensityError::ZeroDenominator
        );
        assert!(matches!(
            conditional(&d, &["y"], &["y"], &Kernels::new()),
            Err(DensityError::OverlappingVariables(_))
        ));
    }

    #[test]
    fn conditional_of_independent_counts_is_marginal() {
        let d = Dataset::new(8)
            .with_discrete("y", 2, vec![1, 1, 2, 1, 1, 1, 2, 1])
            .unwrap()
            .with_discrete("u", 2, vec![1, 1, 1, 1, 2, 2, 2, 2])
            .unwrap();
        let c = conditional(&d, &["y"], &["u"], &Kernels::new()).unwrap();
        let m = fit_kde(&d, &["y"], &Kernels::new()).unwrap();
        for y in [1.0, 2.0] {
            for u in [1.0, 2.0] {
                assert!((c.eval(&[y], &[u]).unwrap() - m.eval(&[y]).unwrap()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn discrete_conditional_rows_sum_to_one() {
        let d = Dataset::new(9)
            .with_discrete("y", 3, vec![1, 2, 3, 1, 1, 2, 3, 3, 2])
            .unwrap()
            .with_discrete("u", 2, vec![1, 1, 1, 2, 2, 2, 2, 1, 1])
            .unwrap();
        let c = conditional(&d, &["y"], &["u"], &Kernels::new()).unwrap();
        for u in [1.0, 2.0] {
            let total: f64 = [1.0, 2.0, 3.0]
                .iter()
                .map(|&y| c.eval(&[y], &[u]).unwrap())
                .sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn reproducing_property_on_mass_table() {
        // Σ_x' p(x') 1[x − x'] = p(x) for a discrete mass table.
        let support = [1.0, 2.0, 3.0, 4.0];
        let mass = [0.1, 0.2, 0.3, 0.4];
        for (i, &x) in support.iter().enumerate() {
            let s: f64 = support
                .iter()
                .zip(mass)
                .map(|(&xp, p)| p * KernelSpec::Kronecker.value(&[x], &[xp]))
                .sum();
            assert_eq!(s, mass[i]);
        }
    }

    #[test]
    fn gaussian_kde_integrates_to_one() {
        let xs = vec![-2.0, -0.3, 0.1, 0.4, 1.7, 3.2];
        let d = Dataset::new(xs.len())
            .with_continuous("x", xs.clone())
            .unwrap();
        let est = fit_kde(&d, &["x"], &Kernels::new()).unwrap();
        let h = match &est.kernels()[0] {
            KernelSpec::Gaussian { bandwidths } => bandwidths[0],
            _ => unreachable!(),
        };
        let (lo, hi) = (-2.0 - 6.0 * h, 3.2 + 6.0 * h);
        let steps = 20_000;
        let dx = (hi - lo) / steps as f64;
        let integral: f64 = (0..steps)
            .map(|i| est.eval(&[lo + (i as f64 + 0.5) * dx]).unwrap() * dx)
            .sum();
        assert!((integral - 1.0).abs() < 1e-3, "integral {integral}");
    }

    #[test]
    fn joint_is_not_product_of_marginals() {
        let k = Kernels::new()
            .with("a", KernelSpec::gaussian(1.0))
            .with("b", KernelSpec::gaussian(0.5));
        let one = Dataset::new(1)
            .with_continuous("a", vec![0.3])
            .unwrap()
            .with_continuous("b", vec![-1.0])
            .unwrap();
        let joint = fit_kde(&one, &["a", "b"], &k)
            .unwrap()
            .eval(&[0.0, 0.0])
            .unwrap();
        let pa = fit_kde(&one, &["a"], &k).unwrap().eval(&[0.0]).unwrap();
        let pb = fit_kde(&one, &["b"], &k).unwrap().eval(&[0.0]).unwrap();
        assert!((joint - pa * pb).abs() < 1e-15);

        let two = Dataset::new(2)
            .with_continuous("a", vec![0.3, -2.0])
            .unwrap()
            .with_continuous("b", vec![-1.0, 2.0])
            .unwrap();
        let joint = fit_kde(&two, &["a", "b"], &k)
            .unwrap()
            .eval(&[0.0, 0.0])
            .unwrap();
        let pa = fit_kde(&two, &["a"], &k).unwrap().eval(&[0.0]).unwrap();
        let pb = fit_kde(&two, &["b"], &k).unwrap().eval(&[0.0]).unwrap();
        assert!((joint - pa * pb).abs() > 1e-3);
    }

    #[test]
    fn mixed_kernels_restrict_to_matching_category() {
        let d = Dataset::new(3)
            .with_discrete("c", 2, vec![1, 2, 1])
            .unwrap()
            .with_continuous("x", vec![0.0, 0.0, 1.0])
            .unwrap();
        let k = Kernels::new().with("x", KernelSpec::gaussian(1.0));
        let est = fit_kde(&d, &["c", "x"], &k).unwrap();
        let expected = (normal_pdf(0.0) + normal_pdf(1.0)) / 3.0;
        assert!((est.eval(&[1.0, 0.0]).unwrap() - expected).abs() < 1e-15);
        for i in 0..3 {
            let mut p = Vec::new();
            d.gather_row(&["c", "x"], i, &mut p).unwrap();
            assert!(est.eval(&p).unwrap() > 0.0);
        }
    }

    #[test]
    fn silverman_rule() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let xs: Vec<f64> = (0..100).map(|_| StandardNormal.sample(&mut rng)).collect();
        let h = silverman_bandwidth(&xs).unwrap();
        // Independent recomputation of the reference rule.
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let sd = (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)).sqrt();
        let mut s = xs.clone();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let q = |p: f64| {
            let pos = p * 99.0;
            let i = pos.floor() as usize;
            s[i] + (pos - i as f64) * (s[i + 1] - s[i])
        };
        let expected = 0.9 * sd.min((q(0.75) - q(0.25)) / 1.34) * n.powf(-0.2);
        assert!((h - expected).abs() < 1e-12);
        assert!((h - 0.358).abs() < 0.06, "h = {h}");

        let two = silverman_bandwidth(&[0.0, 1.0]).unwrap();
        assert!(two.is_finite() && two > 0.0);
        assert_eq!(
            silverman_bandwidth(&[2.0; 5]).unwrap_err(),
            DensityError::DegenerateColumn
        );
        assert!(silverman_bandwidth(&[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap() > 0.0);
    }

    #[test]
    fn floor_counts_only_positive_numerators() {
        let f = FloorCounter::new();
        assert_eq!(floored_ratio(0.0, 0.0, &f), 0.0);
        assert_eq!(f.count(), 0);
        assert_eq!(floored_ratio(1e-13, 1e-14, &f), 1e-13 / DENSITY_FLOOR);
        assert_eq!(f.count(), 1);
        assert_eq!(floored_ratio(0.5, 0.25, &f), 2.0);
    }
}

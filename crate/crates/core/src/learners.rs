//! Classifiers for the experiments: linear discriminant analysis and a random
//! forest of CART trees, plus accuracy scoring.

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LearnerError {
    #[error("training data holds a single class")]
    SingleClass,
    #[error("class {class} has {rows} rows; at least {needed} required")]
    TooFewRows {
        class: f64,
        rows: usize,
        needed: usize,
    },
    #[error("covariance is singular even after the ridge term")]
    Singular,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    Empty,
}

/// Dense row-major feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self, LearnerError> {
        if values.len() != rows * cols {
            return Err(LearnerError::LengthMismatch {
                left: values.len(),
                right: rows * cols,
            });
        }
        Ok(FeatureMatrix { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }
}

/// Sorted distinct labels and each row's index into them.
fn encode(labels: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut classes = labels.to_vec();
    classes.sort_by(f64::total_cmp);
    classes.dedup();
    let codes = labels
        .iter()
        .map(|l| {
            classes
                .binary_search_by(|c| c.total_cmp(l))
                .expect("label is a class")
        })
        .collect();
    (classes, codes)
}

fn check_training(
    x: &FeatureMatrix,
    labels: &[f64],
) -> Result<(Vec<f64>, Vec<usize>), LearnerError> {
    if x.rows() != labels.len() {
        return Err(LearnerError::LengthMismatch {
            left: x.rows(),
            right: labels.len(),
        });
    }
    if labels.is_empty() {
        return Err(LearnerError::Empty);
    }
    let (classes, codes) = encode(labels);
    if classes.len() < 2 {
        return Err(LearnerError::SingleClass);
    }
    Ok((classes, codes))
}

fn check_row(expected: usize, row: &[f64]) -> Result<(), LearnerError> {
    if row.len() != expected {
        return Err(LearnerError::DimensionMismatch {
            expected,
            got: row.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel {
    pub classes: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub priors: Vec<f64>,
    pub ridge: f64,
    /// `Σ⁻¹ μₖ` per class.
    coefficients: Vec<Vec<f64>>,
    /// `−½ μₖᵀ Σ⁻¹ μₖ + ln πₖ` per class.
    intercepts: Vec<f64>,
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite `d × d` matrix.
fn cholesky(a: &[f64], d: usize) -> Result<Vec<f64>, LearnerError> {
    let mut l = vec![0.0; d * d];
    for j in 0..d {
        let mut diag = a[j * d + j];
        for k in 0..j {
            diag -= l[j * d + k] * l[j * d + k];
        }
        if diag.is_nan() || diag <= 0.0 || !diag.is_finite() {
            return Err(LearnerError::Singular);
        }
        let ljj = diag.sqrt();
        l[j * d + j] = ljj;
        for i in j + 1..d {
            let mut s = a[i * d + j];
            for k in 0..j {
                s -= l[i * d + k] * l[j * d + k];
            }
            l[i * d + j] = s / ljj;
        }
    }
    Ok(l)
}

/// Solves `L Lᵀ x = b`.
fn cholesky_solve(l: &[f64], d: usize, b: &[f64]) -> Vec<f64> {
    let mut y = b.to_vec();
    for i in 0..d {
        for k in 0..i {
            y[i] -= l[i * d + k] * y[k];
        }
        y[i] /= l[i * d + i];
    }
    for i in (0..d).rev() {
        for k in i + 1..d {
            y[i] -= l[k * d + i] * y[k];
        }
        y[i] /= l[i * d + i];
    }
    y
}

/// Fits LDA with a pooled covariance plus ridge `1e-6 · trace(Σ)/d`.
pub fn lda_fit(x: &FeatureMatrix, labels: &[f64]) -> Result<LdaModel, LearnerError> {
    let (classes, codes) = check_training(x, labels)?;
    let (n, d, k) = (x.rows(), x.cols(), classes.len());
    let mut counts = vec![0usize; k];
    let mut means = vec![vec![0.0; d]; k];
    for (i, &c) in codes.iter().enumerate() {
        counts[c] += 1;
        for (m, v) in means[c].iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    for (c, &count) in counts.iter().enumerate() {
        if count < 2 {
            return Err(LearnerError::TooFewRows {
                class: classes[c],
                rows: count,
                needed: 2,
            });
        }
        means[c].iter_mut().for_each(|m| *m /= count as f64);
    }

    let mut cov = vec![0.0; d * d];
    let mut centered = vec![0.0; d];
    for (i, &c) in codes.iter().enumerate() {
        for (j, (v, m)) in x.row(i).iter().zip(&means[c]).enumerate() {
            centered[j] = v - m;
        }
        for a in 0..d {
            let ca = centered[a];
            if ca == 0.0 {
                continue;
            }
            let row = &mut cov[a * d..a * d + a + 1];
            for (b, entry) in row.iter_mut().enumerate() {
                *entry += ca * centered[b];
            }
        }
    }
    let dof = (n - k) as f64;
    for a in 0..d {
        for b in 0..=a {
            let v = cov[a * d + b] / dof;
            cov[a * d + b] = v;
            cov[b * d + a] = v;
        }
    }
    let trace: f64 = (0..d).map(|a| cov[a * d + a]).sum();
    let ridge = 1e-6 * trace / d as f64;
    for a in 0..d {
        cov[a * d + a] += ridge;
    }
    let l = cholesky(&cov, d)?;

    let priors: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let coefficients: Vec<Vec<f64>> = means.iter().map(|m| cholesky_solve(&l, d, m)).collect();
    let intercepts = means
        .iter()
        .zip(&coefficients)
        .zip(&priors)
        .map(|((m, a), p)| -0.5 * dot(m, a) + p.ln())
        .collect();
    Ok(LdaModel {
        classes,
        means,
        priors,
        ridge,
        coefficients,
        intercepts,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LdaModel {
    /// Linear discriminant score of each class.
    pub fn scores(&self, row: &[f64]) -> Result<Vec<f64>, LearnerError> {
        check_row(self.means[0].len(), row)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&self.intercepts)
            .map(|(a, b)| dot(a, row) + b)
            .collect())
    }

    pub fn predict_row(&self, row: &[f64]) -> Result<f64, LearnerError> {
        let scores = self.scores(row)?;
        Ok(self.classes[argmax(&scores)])
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<f64>, LearnerError> {
        (0..x.rows()).map(|i| self.predict_row(x.row(i))).collect()
    }
}

pub fn lda_predict(model: &LdaModel, x: &FeatureMatrix) -> Result<Vec<f64>, LearnerError> {
    model.predict(x)
}

/// Index of the largest value; the first one wins ties.
fn argmax<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestParams {
    pub trees: usize,
    /// Features tried per split; `None` means `⌈√d⌉`.
    pub max_features: Option<usize>,
    pub min_leaf: usize,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            trees: 100,
            max_features: None,
            min_leaf: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(usize),
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn predict(&self, row: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                Node::Leaf(class) => return class,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[feature] <= threshold {
                        left
                    } else {
                        right
                    }
                }
            }
        }
    }

    pub fn leaves(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf(_)))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForestModel {
    pub classes: Vec<f64>,
    pub params: ForestParams,
    features: usize,
    trees: Vec<Tree>,
}

struct TreeBuilder<'a> {
    x: &'a FeatureMatrix,
    codes: &'a [usize],
    k: usize,
    mtry: usize,
    min_leaf: usize,
    nodes: Vec<Node>,
}

impl TreeBuilder<'_> {
    fn majority(&self, idx: &[usize]) -> (usize, usize) {
        let mut counts = vec![0usize; self.k];
        for &i in idx {
            counts[self.codes[i]] += 1;
        }
        let distinct = counts.iter().filter(|&&c| c > 0).count();
        (argmax(&counts), distinct)
    }

    /// Best Gini split `(score, threshold)` on one feature, maximizing
    /// `Σ l²/nₗ + Σ r²/nᵣ`. `None` if no split satisfies the leaf size.
    fn best_on_feature(
        &self,
        idx: &[usize],
        f: usize,
        pairs: &mut Vec<(f64, usize)>,
    ) -> Option<(f64, f64)> {
        pairs.clear();
        pairs.extend(idx.iter().map(|&i| (self.x.get(i, f), self.codes[i])));
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = pairs.len();
        let mut total = vec![0usize; self.k];
        for p in pairs.iter() {
            total[p.1] += 1;
        }
        let mut left = vec![0usize; self.k];
        let mut best: Option<(f64, f64)> = None;
        for i in 0..n - 1 {
            left[pairs[i].1] += 1;
            let nl = i + 1;
            let nr = n - nl;
            if pairs[i].0 == pairs[i + 1].0 || nl < self.min_leaf || nr < self.min_leaf {
                continue;
            }
            let (mut sl, mut sr) = (0.0, 0.0);
            for c in 0..self.k {
                let l = left[c] as f64;
                let r = (total[c] - left[c]) as f64;
                sl += l * l;
                sr += r * r;
            }
            let score = sl / nl as f64 + sr / nr as f64;
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, 0.5 * (pairs[i].0 + pairs[i + 1].0)));
            }
        }
        best
    }

    fn grow(&mut self, idx: Vec<usize>, rng: &mut ChaCha20Rng) -> usize {
        let at = self.nodes.len();
        let (majority, distinct) = self.majority(&idx);
        self.nodes.push(Node::Leaf(majority));
        if distinct < 2 || idx.len() < 2 * self.min_leaf {
            return at;
        }
        let d = self.x.cols();
        let mut order: Vec<usize> = (0..d).collect();
        order.shuffle(rng);
        let mut pairs = Vec::with_capacity(idx.len());
        let mut best: Option<(f64, usize, f64)> = None;
        for &f in order.iter().take(self.mtry) {
            if let Some((score, threshold)) = self.best_on_feature(&idx, f, &mut pairs) {
                if best.is_none_or(|(s, _, _)| score > s) {
                    best = Some((score, f, threshold));
                }
            }
        }
        let Some((_, feature, threshold)) = best else {
            return at;
        };
        let (l, r): (Vec<usize>, Vec<usize>) = idx
            .iter()
            .partition(|&&i| self.x.get(i, feature) <= threshold);
        drop(idx);
        let left = self.grow(l, rng);
        let right = self.grow(r, rng);
        self.nodes[at] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        at
    }
}

/// Fits a random forest: bootstrap-resampled CART trees with Gini splits and
/// `max_features` random candidate features per split. Trees train in
/// parallel, each on its own ChaCha20 stream.
pub fn forest_fit(
    x: &FeatureMatrix,
    labels: &[f64],
    params: ForestParams,
) -> Result<ForestModel, LearnerError> {
    let (classes, codes) = check_training(x, labels)?;
    if params.trees == 0 || params.min_leaf == 0 {
        return Err(LearnerError::Empty);
    }
    let d = x.cols();
    let mtry = params
        .max_features
        .unwrap_or_else(|| (d as f64).sqrt().ceil() as usize)
        .clamp(1, d.max(1));
    let n = x.rows();
    let trees = (0..params.trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
            rng.set_stream(t as u64);
            let sample: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let mut builder = TreeBuilder {
                x,
                codes: &codes,
                k: classes.len(),
                mtry,
                min_leaf: params.min_leaf,
                nodes: Vec::new(),
            };
            builder.grow(sample, &mut rng);
            Tree {
                nodes: builder.nodes,
            }
        })
        .collect();
    Ok(ForestModel {
        classes,
        params,
        features: d,
        trees,
    })
}

impl ForestModel {
    /// Majority vote over trees; ties go to the smaller class.
    pub fn predict_row(&self, row: &[f64]) -> Result<f64, LearnerError> {
        check_row(self.features, row)?;
        let mut votes = vec![0usize; self.classes.len()];
        for t in &self.trees {
            votes[t.predict(row)] += 1;
        }
        Ok(self.classes[argmax(&votes)])
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<f64>, LearnerError> {
        (0..x.rows())
            .into_par_iter()
            .map(|i| self.predict_row(x.row(i)))
            .collect()
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }
}

pub fn forest_predict(model: &ForestModel, x: &FeatureMatrix) -> Result<Vec<f64>, LearnerError> {
    model.predict(x)
}

/// Fraction of exact matches.
pub fn accuracy(predicted: &[f64], truth: &[f64]) -> Result<f64, LearnerError> {
    if predicted.len() != truth.len() {
        return Err(LearnerError::LengthMismatch {
            left: predicted.len(),
            right: truth.len(),
        });
    }
    if truth.is_empty() {
        return Err(LearnerError::Empty);
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / truth.len() as f64)
}

/// Either classifier behind one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classifier {
    Lda,
    Forest(ForestParams),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Lda(LdaModel),
    Forest(ForestModel),
}

impl Classifier {
    pub fn fit(&self, x: &FeatureMatrix, labels: &[f64]) -> Result<Model, LearnerError> {
        match self {
            Classifier::Lda => lda_fit(x, labels).map(Model::Lda),
            Classifier::Forest(p) => forest_fit(x, labels, *p).map(Model::Forest),
        }
    }
}

impl Model {
    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<f64>, LearnerError> {
        match self {
            Model::Lda(m) => m.predict(x),
            Model::Forest(m) => m.predict(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, Normal};

    fn gaussian_classes(
        n: usize,
        means: [[f64; 2]; 2],
        sd: f64,
        seed: u64,
    ) -> (FeatureMatrix, Vec<f64>) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let noise = Normal::new(0.0, sd).unwrap();
        let mut values = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let c = i % 2;
            values.push(means[c][0] + noise.sample(&mut rng));
            values.push(means[c][1] + noise.sample(&mut rng));
            labels.push(c as f64 + 1.0);
        }
        (FeatureMatrix::new(n, 2, values).unwrap(), labels)
    }

    #[test]
    fn lda_separable_and_chance() {
        let (x, y) = gaussian_classes(200, [[-5.0, 0.0], [5.0, 0.0]], 0.1, 1);
        let m = lda_fit(&x, &y).unwrap();
        assert_eq!(accuracy(&m.predict(&x).unwrap(), &y).unwrap(), 1.0);

        let (x, y) = gaussian_classes(2000, [[0.0, 0.0], [0.0, 0.0]], 1.0, 2);
        let m = lda_fit(&x, &y).unwrap();
        let (xt, yt) = gaussian_classes(4000, [[0.0, 0.0], [0.0, 0.0]], 1.0, 3);
        let acc = accuracy(&m.predict(&xt).unwrap(), &yt).unwrap();
        assert!((acc - 0.5).abs() < 0.05, "{acc}");
    }

    #[test]
    fn lda_boundary_bisects_means() {
        let (x, y) = gaussian_classes(4000, [[-1.0, 2.0], [3.0, -1.0]], 1.0, 4);
        let m = lda_fit(&x, &y).unwrap();
        let mid: Vec<f64> = m.means[0]
            .iter()
            .zip(&m.means[1])
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let s = m.scores(&mid).unwrap();
        // Equal priors by construction; the midpoint of the fitted means is on the boundary.
        assert!((s[0] - s[1]).abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn lda_shift_invariance() {
        let (x, y) = gaussian_classes(300, [[0.0, 0.0], [1.0, 1.0]], 1.0, 5);
        let (xt, _) = gaussian_classes(300, [[0.0, 0.0], [1.0, 1.0]], 1.0, 6);
        let shift = |m: &FeatureMatrix| {
            FeatureMatrix::new(
                m.rows(),
                2,
                m.values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v + if i % 2 == 0 { 100.0 } else { -40.0 })
                    .collect(),
            )
            .unwrap()
        };
        let a = lda_fit(&x, &y).unwrap().predict(&xt).unwrap();
        let b = lda_fit(&shift(&x), &y)
            .unwrap()
            .predict(&shift(&xt))
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lda_errors() {
        let x = FeatureMatrix::new(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            lda_fit(&x, &[1.0, 1.0, 1.0]).unwrap_err(),
            LearnerError::SingleClass
        );
        assert!(matches!(
            lda_fit(&x, &[1.0, 1.0, 2.0]),
            Err(LearnerError::TooFewRows { .. })
        ));
        let constant = FeatureMatrix::new(4, 1, vec![1.0; 4]).unwrap();
        assert_eq!(
            lda_fit(&constant, &[1.0, 1.0, 2.0, 2.0]).unwrap_err(),
            LearnerError::Singular
        );
    }

    #[test]
    fn cholesky_solves() {
        let a = [4.0, 2.0, 2.0, 3.0];
        let l = cholesky(&a, 2).unwrap();
        let x = cholesky_solve(&l, 2, &[2.0, 1.0]);
        assert!((4.0 * x[0] + 2.0 * x[1] - 2.0).abs() < 1e-12);
        assert!((2.0 * x[0] + 3.0 * x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn forest_threshold_separable() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let gen = |rng: &mut ChaCha20Rng, n: usize| {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y = v
                .iter()
                .map(|&a| if a > 0.2 { 2.0 } else { 1.0 })
                .collect::<Vec<_>>();
            (FeatureMatrix::new(n, 1, v).unwrap(), y)
        };
        let (x, y) = gen(&mut rng, 400);
        let (xt, yt) = gen(&mut rng, 400);
        // Keep test points away from the boundary gap the training data leaves.
        let m = forest_fit(
            &x,
            &y,
            ForestParams {
                trees: 10,
                ..Default::default()
            },
        )
        .unwrap();
        let keep: Vec<usize> = (0..xt.rows())
            .filter(|&i| (xt.row(i)[0] - 0.2).abs() > 0.02)
            .collect();
        let pred: Vec<f64> = keep
            .iter()
            .map(|&i| m.predict_row(xt.row(i)).unwrap())
            .collect();
        let truth: Vec<f64> = keep.iter().map(|&i| yt[i]).collect();
        assert_eq!(accuracy(&pred, &truth).unwrap(), 1.0);
    }

    #[test]
    fn forest_chance_and_determinism() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let mut gen = |n: usize| {
            let v: Vec<f64> = (0..n * 5).map(|_| rng.random::<f64>()).collect();
            let y: Vec<f64> = (0..n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { 2.0 })
                .collect();
            (FeatureMatrix::new(n, 5, v).unwrap(), y)
        };
        let (x, y) = gen(2000);
        let (xt, yt) = gen(2000);
        let p = ForestParams {
            trees: 30,
            seed: 3,
            ..Default::default()
        };
        let a = forest_fit(&x, &y, p).unwrap();
        let acc = accuracy(&a.predict(&xt).unwrap(), &yt).unwrap();
        assert!((0.4..=0.6).contains(&acc), "{acc}");
        assert_eq!(a, forest_fit(&x, &y, p).unwrap());
    }

    #[test]
    fn forest_stump_predicts_majority() {
        let x = FeatureMatrix::new(10, 1, (0..10).map(f64::from).collect()).unwrap();
        let y = [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0];
        let m = forest_fit(
            &x,
            &y,
            ForestParams {
                trees: 1,
                min_leaf: 10,
                seed: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(m.trees()[0].leaves(), 1);
        assert_eq!(m.predict(&x).unwrap(), vec![1.0; 10]);
    }

    #[test]
    fn min_leaf_is_respected() {
        let (x, y) = gaussian_classes(300, [[0.0, 0.0], [1.0, 1.0]], 1.0, 9);
        let m = forest_fit(
            &x,
            &y,
            ForestParams {
                trees: 3,
                min_leaf: 7,
                seed: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(m.trees().iter().all(|t| t.leaves() <= 300 / 7));
    }

    #[test]
    fn accuracy_cases() {
        assert_eq!(accuracy(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(accuracy(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), 0.0);
        assert_eq!(
            accuracy(&[1.0, 1.0, 2.0, 2.0], &[1.0, 2.0, 2.0, 2.0]).unwrap(),
            0.75
        );
        assert!(accuracy(&[1.0], &[1.0, 2.0]).is_err());
    }
}

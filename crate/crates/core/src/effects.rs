//! Causal effect summaries computed from bootstrap weights.

use thiserror::Error;

use crate::data::{DataError, Dataset};
use crate::density::Kernels;
use crate::weights::{BackdoorModel, FrontdoorModel, WeightError, WeightVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EffectError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("quantile level must lie in (0, 1), got {0}")]
    InvalidQuantile(f64),
    #[error("{weights} weights for {rows} rows")]
    LengthMismatch { weights: usize, rows: usize },
    #[error("weights sum to zero")]
    AllZero,
}

/// Column labels for the flattened effect dimensions: `x` or `x_1, …, x_d`.
pub fn dimension_labels(data: &Dataset, effect: &[&str]) -> Result<Vec<String>, DataError> {
    let mut out = Vec::new();
    for &name in effect {
        let width = data.variable(name)?.width();
        if width == 1 {
            out.push(name.to_string());
        } else {
            out.extend((1..=width).map(|j| format!("{name}_{j}")));
        }
    }
    Ok(out)
}

fn checked_matrix(
    data: &Dataset,
    effect: &[&str],
    weights: &[f64],
) -> Result<(usize, Vec<f64>, f64), EffectError> {
    if weights.len() != data.n_rows() {
        return Err(EffectError::LengthMismatch {
            weights: weights.len(),
            rows: data.n_rows(),
        });
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(EffectError::AllZero);
    }
    let (width, m) = data.matrix(effect)?;
    Ok((width, m, total))
}

/// `Σₙ wₙ xₙ / Σₙ wₙ`, per effect dimension.
pub fn weighted_response(
    data: &Dataset,
    effect: &[&str],
    weights: &[f64],
) -> Result<Vec<f64>, EffectError> {
    let (width, m, total) = checked_matrix(data, effect, weights)?;
    let mut acc = vec![0.0; width];
    for (row, &w) in m.chunks_exact(width.max(1)).zip(weights) {
        for (a, &x) in acc.iter_mut().zip(row) {
            *a += w * x;
        }
    }
    Ok(acc.into_iter().map(|a| a / total).collect())
}

/// Per dimension, the smallest `x` whose cumulative normalized weight reaches `q`.
pub fn weighted_quantile(
    data: &Dataset,
    effect: &[&str],
    weights: &[f64],
    q: f64,
) -> Result<Vec<f64>, EffectError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(EffectError::InvalidQuantile(q));
    }
    let (width, m, total) = checked_matrix(data, effect, weights)?;
    let n = data.n_rows();
    let mut out = Vec::with_capacity(width);
    for j in 0..width {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| m[a * width + j].total_cmp(&m[b * width + j]));
        let mut cumulative = 0.0;
        let mut value = m[order[n - 1] * width + j];
        for &i in &order {
            cumulative += weights[i];
            if weights[i] > 0.0 && cumulative >= q * total {
                value = m[i * width + j];
                break;
            }
        }
        out.push(value);
    }
    Ok(out)
}

/// Expected responses under several interventions and their pairwise contrasts.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectEstimate {
    pub dimensions: Vec<String>,
    /// `(y, E[x | do(y)])` in the requested order.
    pub responses: Vec<(f64, Vec<f64>)>,
}

impl EffectEstimate {
    pub fn response(&self, y: f64) -> Option<&[f64]> {
        self.responses
            .iter()
            .find(|(v, _)| *v == y)
            .map(|(_, r)| r.as_slice())
    }

    /// `E[x | do(y₁)] − E[x | do(y₀)]` per dimension.
    pub fn contrast(&self, y1: f64, y0: f64) -> Option<Vec<f64>> {
        let (a, b) = (self.response(y1)?, self.response(y0)?);
        Some(a.iter().zip(b).map(|(a, b)| a - b).collect())
    }
}

/// Weighted responses for each intervention in `ys`.
pub fn estimate_effects<F>(
    data: &Dataset,
    effect: &[&str],
    ys: &[f64],
    weights: F,
) -> Result<EffectEstimate, EffectError>
where
    F: Fn(f64) -> Result<WeightVector, WeightError>,
{
    let mut responses = Vec::with_capacity(ys.len());
    for &y in ys {
        let w = weights(y)?;
        responses.push((y, weighted_response(data, effect, w.values())?));
    }
    Ok(EffectEstimate {
        dimensions: dimension_labels(data, effect)?,
        responses,
    })
}

fn contrast(a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    a.iter().zip(&b).map(|(a, b)| a - b).collect()
}

/// Back-door average causal effect `E[x | do(y₁)] − E[x | do(y₀)]`.
pub fn ate_backdoor(
    data: &Dataset,
    effect: &[&str],
    adjust: &[&str],
    target: &str,
    y1: f64,
    y0: f64,
    kernels: &Kernels,
) -> Result<Vec<f64>, EffectError> {
    let model = BackdoorModel::fit(data, adjust, target, kernels)?;
    let r1 = weighted_response(data, effect, model.weights(y1)?.values())?;
    let r0 = weighted_response(data, effect, model.weights(y0)?.values())?;
    Ok(contrast(r1, r0))
}

/// Front-door average causal effect `E[x | do(y₁)] − E[x | do(y₀)]`.
pub fn ate_frontdoor(
    data: &Dataset,
    effect: &[&str],
    mediator: &str,
    target: &str,
    y1: f64,
    y0: f64,
    kernels: &Kernels,
) -> Result<Vec<f64>, EffectError> {
    let model = FrontdoorModel::fit(data, mediator, target, kernels)?;
    let r1 = weighted_response(data, effect, model.weights(y1)?.values())?;
    let r0 = weighted_response(data, effect, model.weights(y0)?.values())?;
    Ok(contrast(r1, r0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Dataset {
        Dataset::new(6)
            .with_discrete("y", 2, vec![1, 1, 1, 2, 2, 2])
            .unwrap()
            .with_discrete("u", 2, vec![1, 1, 2, 1, 2, 2])
            .unwrap()
            .with_continuous("x", vec![1.0, 3.0, 2.0, 0.0, 5.0, 1.0])
            .unwrap()
    }

    #[test]
    fn backdoor_toy_responses() {
        let d = toy();
        let k = Kernels::new();
        let model = BackdoorModel::fit(&d, &["u"], "y", &k).unwrap();
        let est = estimate_effects(&d, &["x"], &[1.0, 2.0], |y| model.weights(y)).unwrap();
        assert!((est.response(1.0).unwrap()[0] - 2.0).abs() < 1e-15);
        assert!((est.response(2.0).unwrap()[0] - 1.5).abs() < 1e-15);
        assert_eq!(est.contrast(1.0, 2.0).unwrap(), vec![0.5]);
        assert_eq!(
            ate_backdoor(&d, &["x"], &["u"], "y", 1.0, 2.0, &k).unwrap(),
            vec![0.5]
        );
        assert_eq!(
            ate_backdoor(&d, &["x"], &["u"], "y", 1.0, 1.0, &k).unwrap(),
            vec![0.0]
        );
    }

    #[test]
    fn uniform_weights_give_sample_mean_and_median() {
        let d = toy();
        let w = vec![1.0; 6];
        assert!((weighted_response(&d, &["x"], &w).unwrap()[0] - 2.0).abs() < 1e-15);
        let odd = Dataset::new(5)
            .with_continuous("x", vec![5.0, 1.0, 4.0, 2.0, 3.0])
            .unwrap();
        assert_eq!(
            weighted_quantile(&odd, &["x"], &[1.0; 5], 0.5).unwrap(),
            vec![3.0]
        );
    }

    #[test]
    fn quantile_walks_cumulative_weight() {
        let d = Dataset::new(3)
            .with_continuous("x", vec![1.0, 2.0, 3.0])
            .unwrap();
        assert_eq!(
            weighted_quantile(&d, &["x"], &[0.25, 0.25, 0.5], 0.5).unwrap(),
            vec![2.0]
        );
        for q in [0.01, 0.5, 0.99] {
            assert_eq!(
                weighted_quantile(&d, &["x"], &[1.0, 0.0, 0.0], q).unwrap(),
                vec![1.0]
            );
        }
        assert!(weighted_quantile(&d, &["x"], &[1.0; 3], 1.0).is_err());
        assert_eq!(
            weighted_quantile(&d, &["x"], &[0.0; 3], 0.5).unwrap_err(),
            EffectError::AllZero
        );
    }

    #[test]
    fn unconfounded_backdoor_is_difference_of_class_means() {
        let d = Dataset::new(8)
            .with_discrete("y", 2, vec![1, 2, 1, 1, 2, 1, 1, 1])
            .unwrap()
            .with_discrete("u", 2, vec![1, 1, 1, 1, 2, 2, 2, 2])
            .unwrap()
            .with_continuous("x", vec![1.0, 4.0, 2.0, 3.0, 6.0, 1.0, 2.0, 3.0])
            .unwrap();
        let ate = ate_backdoor(&d, &["x"], &["u"], "y", 2.0, 1.0, &Kernels::new()).unwrap();
        assert!((ate[0] - (5.0 - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn frontdoor_independent_mediator_and_constant_response() {
        let d = Dataset::new(8)
            .with_discrete("y", 2, vec![1, 1, 1, 1, 2, 2, 2, 2])
            .unwrap()
            .with_discrete("z", 2, vec![1, 2, 1, 2, 1, 2, 1, 2])
            .unwrap()
            .with_continuous("x", vec![1.0, 4.0, 2.0, 3.0, 6.0, 1.0, 2.0, 3.0])
            .unwrap()
            .with_continuous("c", vec![7.0; 8])
            .unwrap();
        let k = Kernels::new();
        assert!(ate_frontdoor(&d, &["x"], "z", "y", 2.0, 1.0, &k).unwrap()[0].abs() < 1e-12);
        assert!(ate_frontdoor(&d, &["c"], "z", "y", 2.0, 1.0, &k).unwrap()[0].abs() < 1e-12);
    }

    #[test]
    fn multi_dimensional_labels() {
        let d = Dataset::new(1)
            .with_continuous_matrix("x", 2, vec![1.0, 2.0])
            .unwrap()
            .with_continuous("v", vec![0.0])
            .unwrap();
        assert_eq!(
            dimension_labels(&d, &["x", "v"]).unwrap(),
            vec!["x_1", "x_2", "v"]
        );
        assert_eq!(
            weighted_response(&d, &["x"], &[3.0]).unwrap(),
            vec![1.0, 2.0]
        );
    }
}

//! Causal bootstrap weights.
//!
//! For an interventional distribution of the form
//! `p(x | do(y)) = ∫ p(x | P(x)) Πᵥ p(v | P(v)) dE` with `E = P(x) \ {y}`,
//! resampling row `n` with weight
//!
//! ```text
//! wₙ = (1/N) · [K(yₙ − y) if y ∈ P(x)] · Πᵥ p̂(v | P(v)) / p̂(P(x))
//! ```
//!
//! simulates draws from the intervention, where every secondary variable in
//! `E` is replaced by its realization in row `n` and every occurrence of the
//! intervened target keeps the value `y`. [`WeightPlan`] describes such a
//! factorization; [`general_weights`] evaluates it. The closed forms for the
//! back-door, front-door and Tikka graphs are provided separately and are
//! computed directly from conditional estimates, not through the plan engine.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::data::{DataError, Dataset};
use crate::density::{
    conditional, fit_kde, ConditionalEstimate, DensityError, DensityEstimate, FloorCounter,
    KernelSpec, Kernels, DENSITY_FLOOR,
};
use crate::graph::{CausalGraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid weight plan: {0}")]
    InvalidPlan(String),
    #[error("target `{0}` must be a one-dimensional variable")]
    TargetNotScalar(String),
    #[error("weight for row {row} is not finite (positivity violated?)")]
    NonFinite { row: usize },
    #[error(
        "all weights are zero for intervention value {value} (value outside the observed support?)"
    )]
    AllZero { value: f64 },
}

/// Per-row resampling weights for one intervention value.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<f64>,
    intervention: f64,
    floor_hits: usize,
}

impl WeightVector {
    /// Validates raw weights: finite, nonnegative, not all zero.
    pub fn new(
        values: Vec<f64>,
        intervention: f64,
        floor_hits: usize,
    ) -> Result<Self, WeightError> {
        if let Some(row) = values.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(WeightError::NonFinite { row });
        }
        if values.iter().all(|&w| w == 0.0) {
            return Err(WeightError::AllZero {
                value: intervention,
            });
        }
        Ok(WeightVector {
            values,
            intervention,
            floor_hits,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn intervention(&self) -> f64 {
        self.intervention
    }

    /// How many denominators were floored at ε while their numerator was positive.
    pub fn floor_hits(&self) -> usize {
        self.floor_hits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// The same weights multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self, WeightError> {
        WeightVector::new(
            self.values.iter().map(|w| w * c).collect(),
            self.intervention,
            self.floor_hits,
        )
    }
}

/// A variable reference inside a plan.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlanVar {
    /// The intervened target; always evaluated at the intervention value.
    Target,
    /// A dataset column, substituted by its realization in each row. Naming the
    /// target column here denotes its marginalized copy (written `y'`).
    Observed(String),
}

/// One conditional `p(variables | parents)` of the factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub variables: Vec<String>,
    pub parents: Vec<PlanVar>,
}

/// Declarative interventional factorization, compiled against a dataset by [`WeightPlan::compile`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPlan {
    pub effect: String,
    pub target: String,
    pub factors: Vec<Factor>,
    pub effect_parents: Vec<PlanVar>,
}

impl WeightPlan {
    /// `p(x | do(y)) = ∫ p(x | y, S) p(S) dS`.
    pub fn backdoor(effect: &str, target: &str, adjust: &[&str]) -> Self {
        let adjust: Vec<String> = adjust.iter().map(|s| s.to_string()).collect();
        let mut effect_parents = vec![PlanVar::Target];
        effect_parents.extend(adjust.iter().cloned().map(PlanVar::Observed));
        WeightPlan {
            effect: effect.into(),
            target: target.into(),
            factors: vec![Factor {
                variables: adjust,
                parents: vec![],
            }],
            effect_parents,
        }
    }

    /// `p(x | do(y)) = ∫ p(z | y) ∫ p(x | y', z) p(y') dy' dz`.
    pub fn frontdoor(effect: &str, target: &str, mediator: &str) -> Self {
        WeightPlan {
            effect: effect.into(),
            target: target.into(),
            factors: vec![
                Factor {
                    variables: vec![target.into()],
                    parents: vec![],
                },
                Factor {
                    variables: vec![mediator.into()],
                    parents: vec![PlanVar::Target],
                },
            ],
            effect_parents: vec![
                PlanVar::Observed(target.into()),
                PlanVar::Observed(mediator.into()),
            ],
        }
    }

    /// `p(x | do(y)) = ∫ p(w) ∫ p(z | w, y) ∫ p(x | w, y', z) p(y' | w) dy' dz dw`.
    pub fn tikka(effect: &str, target: &str, w: &str, z: &str) -> Self {
        WeightPlan {
            effect: effect.into(),
            target: target.into(),
            factors: vec![
                Factor {
                    variables: vec![w.into()],
                    parents: vec![],
                },
                Factor {
                    variables: vec![target.into()],
                    parents: vec![PlanVar::Observed(w.into())],
                },
                Factor {
                    variables: vec![z.into()],
                    parents: vec![PlanVar::Observed(w.into()), PlanVar::Target],
                },
            ],
            effect_parents: vec![
                PlanVar::Observed(w.into()),
                PlanVar::Observed(target.into()),
                PlanVar::Observed(z.into()),
            ],
        }
    }

    /// Truncated factorization read off a fully observed graph: `E = P(x) \ {y}`
    /// with each `v ∈ E` conditioned on its graph parents.
    pub fn truncated(graph: &CausalGraph, effect: &str, target: &str) -> Result<Self, WeightError> {
        graph.meta(target)?;
        let effect_parents: Vec<&str> = graph.parents(effect)?;
        let secondary: Vec<&str> = effect_parents
            .iter()
            .copied()
            .filter(|&p| p != target)
            .collect();
        let mut factors = Vec::with_capacity(secondary.len());
        for &v in &secondary {
            if graph.meta(v)?.latent {
                return Err(WeightError::Graph(GraphError::Latent(v.to_string())));
            }
            let mut parents = Vec::new();
            for p in graph.parents(v)? {
                if p == target {
                    parents.push(PlanVar::Target);
                } else if secondary.contains(&p) {
                    parents.push(PlanVar::Observed(p.to_string()));
                } else {
                    return Err(WeightError::InvalidPlan(format!(
                        "parent `{p}` of `{v}` lies outside P({effect}) ∪ {{{target}}}; truncated factorization needs every parent observed within it"
                    )));
                }
            }
            factors.push(Factor {
                variables: vec![v.to_string()],
                parents,
            });
        }
        let plan = WeightPlan {
            effect: effect.into(),
            target: target.into(),
            factors,
            effect_parents: effect_parents
                .iter()
                .map(|&p| {
                    if p == target {
                        PlanVar::Target
                    } else {
                        PlanVar::Observed(p.to_string())
                    }
                })
                .collect(),
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Variables marginalized by the factorization.
    pub fn secondary(&self) -> Vec<&str> {
        self.factors
            .iter()
            .flat_map(|f| f.variables.iter().map(String::as_str))
            .collect()
    }

    pub fn target_in_effect_parents(&self) -> bool {
        self.effect_parents.contains(&PlanVar::Target)
    }

    /// Structural checks, independent of any dataset.
    pub fn validate(&self) -> Result<(), WeightError> {
        let bad = |m: String| Err(WeightError::InvalidPlan(m));
        if self.effect == self.target {
            return bad("effect and target must differ".into());
        }
        let mut secondary = HashSet::new();
        for v in self.secondary() {
            if v == self.effect {
                return bad(format!("the effect `{v}` cannot be a secondary variable"));
            }
            if !secondary.insert(v) {
                return bad(format!("`{v}` has more than one factor"));
            }
        }
        let mut seen = HashSet::new();
        let mut parents_minus_target = HashSet::new();
        for p in &self.effect_parents {
            if !seen.insert(p) {
                return bad("effect parents list a variable twice".into());
            }
            if let PlanVar::Observed(name) = p {
                parents_minus_target.insert(name.as_str());
            }
        }
        if parents_minus_target != secondary {
            return bad(format!(
                "secondary variables {:?} must equal the effect parents without the target {:?}",
                sorted(&secondary),
                sorted(&parents_minus_target)
            ));
        }
        for f in &self.factors {
            if f.variables.is_empty() {
                return bad("factor with no variables".into());
            }
            for p in &f.parents {
                if let PlanVar::Observed(name) = p {
                    if !secondary.contains(name.as_str()) {
                        return bad(format!("conditioning variable `{name}` must be the target or a secondary variable"));
                    }
                    if f.variables.contains(name) {
                        return bad(format!("`{name}` conditions on itself"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Fits every density the plan needs.
    pub fn compile(&self, data: &Dataset, kernels: &Kernels) -> Result<CompiledPlan, WeightError> {
        self.validate()?;
        data.variable(&self.effect)?;
        let target_kernel = target_kernel(data, &self.target, kernels)?;
        fn column<'a>(target: &'a str, p: &'a PlanVar) -> &'a str {
            match p {
                PlanVar::Target => target,
                PlanVar::Observed(name) => name.as_str(),
            }
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let vars: Vec<&str> = f.variables.iter().map(String::as_str).collect();
            let parents: Vec<&str> = f.parents.iter().map(|p| column(&self.target, p)).collect();
            factors.push(CompiledFactor {
                estimate: conditional(data, &vars, &parents, kernels)?,
                variables: f.variables.clone(),
                parents: f.parents.clone(),
            });
        }
        let parent_columns: Vec<&str> = self
            .effect_parents
            .iter()
            .map(|p| column(&self.target, p))
            .collect();
        let effect_parents = fit_kde(data, &parent_columns, kernels)?;
        Ok(CompiledPlan {
            plan: self.clone(),
            factors,
            effect_parents,
            target_kernel,
            data: data.clone(),
        })
    }
}

fn sorted<'a>(set: &HashSet<&'a str>) -> Vec<&'a str> {
    let mut v: Vec<&str> = set.iter().copied().collect();
    v.sort_unstable();
    v
}

impl fmt::Display for PlanVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanVar::Target => write!(f, "do"),
            PlanVar::Observed(name) => write!(f, "{name}"),
        }
    }
}

/// Error from [`parse_plan`], with the 1-based line it occurred on.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct PlanParseError {
    pub line: usize,
    pub message: String,
}

/// Parses a plan file.
///
/// ```text
/// effect x
/// target y
/// factor w
/// factor y' | w
/// factor z | w, y
/// effect-parents w, y', z
/// ```
///
/// Inside `factor` and `effect-parents`, the bare target name means the
/// intervened value and `name'` means the target's marginalized copy.
pub fn parse_plan(text: &str) -> Result<WeightPlan, PlanParseError> {
    let mut effect = None;
    let mut target: Option<String> = None;
    let mut raw_factors: Vec<(usize, Vec<String>, Vec<String>)> = Vec::new();
    let mut raw_parents: Option<(usize, Vec<String>)> = None;

    let list = |s: &str| -> Vec<String> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect()
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "effect" => effect = Some(rest.to_string()),
            "target" => target = Some(rest.to_string()),
            "factor" => {
                let (vars, parents) = rest.split_once('|').unwrap_or((rest, ""));
                let vars = list(vars);
                if vars.is_empty() {
                    return Err(PlanParseError {
                        line,
                        message: "factor needs at least one variable".into(),
                    });
                }
                raw_factors.push((line, vars, list(parents)));
            }
            "effect-parents" => raw_parents = Some((line, list(rest))),
            other => {
                return Err(PlanParseError {
                    line,
                    message: format!(
                        "unknown key `{other}` (expected effect, target, factor or effect-parents)"
                    ),
                })
            }
        }
    }
    let missing = |what: &str| PlanParseError {
        line: text.lines().count().max(1),
        message: format!("missing `{what}` line"),
    };
    let effect = effect
        .filter(|e| !e.is_empty())
        .ok_or_else(|| missing("effect"))?;
    let target = target
        .filter(|t| !t.is_empty())
        .ok_or_else(|| missing("target"))?;
    let (parents_line, parent_names) = raw_parents.ok_or_else(|| missing("effect-parents"))?;

    let primed = format!("{target}'");
    let resolve = |name: &str| -> PlanVar {
        if name == target {
            PlanVar::Target
        } else if name == primed {
            PlanVar::Observed(target.clone())
        } else {
            PlanVar::Observed(name.to_string())
        }
    };
    let mut factors = Vec::new();
    for (line, vars, parents) in raw_factors {
        let mut variables = Vec::new();
        for v in vars {
            match resolve(&v) {
                PlanVar::Target => return Err(PlanParseError {
                    line,
                    message: format!(
                        "the intervened target `{target}` cannot be marginalized; use `{primed}`"
                    ),
                }),
                PlanVar::Observed(name) => variables.push(name),
            }
        }
        factors.push(Factor {
            variables,
            parents: parents.iter().map(|p| resolve(p)).collect(),
        });
    }
    let effect_parents = parent_names.iter().map(|p| resolve(p)).collect();
    let plan = WeightPlan {
        effect,
        target,
        factors,
        effect_parents,
    };
    plan.validate().map_err(|e| PlanParseError {
        line: parents_line,
        message: e.to_string(),
    })?;
    Ok(plan)
}

fn target_kernel(
    data: &Dataset,
    target: &str,
    kernels: &Kernels,
) -> Result<KernelSpec, WeightError> {
    if data.variable(target)?.width() != 1 {
        return Err(WeightError::TargetNotScalar(target.to_string()));
    }
    Ok(kernels.resolve(data, target)?)
}

#[derive(Debug, Clone)]
struct CompiledFactor {
    estimate: ConditionalEstimate,
    variables: Vec<String>,
    parents: Vec<PlanVar>,
}

/// A plan with its densities fitted; evaluates weights for any intervention value.
#[derive(Debug, Clone)]
pub struct CompiledPlan {
    plan: WeightPlan,
    factors: Vec<CompiledFactor>,
    effect_parents: DensityEstimate,
    target_kernel: KernelSpec,
    data: Dataset,
}

impl CompiledPlan {
    pub fn plan(&self) -> &WeightPlan {
        &self.plan
    }

    fn fill(
        &self,
        vars: &[PlanVar],
        row: usize,
        y: f64,
        out: &mut Vec<f64>,
    ) -> Result<(), DataError> {
        for v in vars {
            match v {
                PlanVar::Target => out.push(y),
                PlanVar::Observed(name) => {
                    out.extend_from_slice(self.data.variable(name)?.row(row))
                }
            }
        }
        Ok(())
    }

    fn row_weight(
        &self,
        n: usize,
        y: f64,
        target_col: &[f64],
        floor: &FloorCounter,
    ) -> Result<f64, WeightError> {
        let n_rows = self.data.n_rows() as f64;
        let k = if self.plan.target_in_effect_parents() {
            let k = self.target_kernel.value(&[target_col[n]], &[y]);
            if k == 0.0 {
                return Ok(0.0);
            }
            k
        } else {
            1.0
        };
        let mut numerator = 1.0;
        let mut target_point = Vec::new();
        let mut given_point = Vec::new();
        for f in &self.factors {
            target_point.clear();
            given_point.clear();
            for v in &f.variables {
                target_point.extend_from_slice(self.data.variable(v)?.row(n));
            }
            self.fill(&f.parents, n, y, &mut given_point)?;
            numerator *= f
                .estimate
                .eval_floored(&target_point, &given_point, floor)?;
            if numerator == 0.0 {
                return Ok(0.0);
            }
        }
        given_point.clear();
        self.fill(&self.plan.effect_parents, n, y, &mut given_point)?;
        let denominator = self.effect_parents.eval(&given_point)?;
        Ok(k * crate::density::floored_ratio(numerator, denominator, floor) / n_rows)
    }

    /// Weights for the intervention `do(target = y)`.
    pub fn weights(&self, y: f64) -> Result<WeightVector, WeightError> {
        let floor = FloorCounter::new();
        let target_col = self.data.scalar(&self.plan.target)?;
        let values = (0..self.data.n_rows())
            .into_par_iter()
            .map(|n| self.row_weight(n, y, target_col, &floor))
            .collect::<Result<Vec<f64>, WeightError>>()?;
        WeightVector::new(values, y, floor.count())
    }
}

/// Weights from an arbitrary plan (compiles, then evaluates once).
pub fn general_weights(
    data: &Dataset,
    plan: &WeightPlan,
    y: f64,
    kernels: &Kernels,
) -> Result<WeightVector, WeightError> {
    plan.compile(data, kernels)?.weights(y)
}

fn gather(data: &Dataset, names: &[&str], row: usize, out: &mut Vec<f64>) -> Result<(), DataError> {
    out.clear();
    data.gather_row(names, row, out)
}

/// Fitted back-door conditional `p̂(y | S)`.
#[derive(Debug, Clone)]
pub struct BackdoorModel {
    data: Dataset,
    adjust: Vec<String>,
    target: String,
    target_kernel: KernelSpec,
    conditional: ConditionalEstimate,
}

impl BackdoorModel {
    pub fn fit(
        data: &Dataset,
        adjust: &[&str],
        target: &str,
        kernels: &Kernels,
    ) -> Result<Self, WeightError> {
        if adjust.contains(&target) {
            return Err(WeightError::InvalidPlan(format!(
                "adjustment set contains the target `{target}`"
            )));
        }
        let target_kernel = target_kernel(data, target, kernels)?;
        Ok(BackdoorModel {
            data: data.clone(),
            adjust: adjust.iter().map(|s| s.to_string()).collect(),
            target: target.to_string(),
            target_kernel,
            conditional: conditional(data, &[target], adjust, kernels)?,
        })
    }

    /// `wᵢ = K[yᵢ − y] / (N · p̂(y | Sᵢ))`.
    pub fn weights(&self, y: f64) -> Result<WeightVector, WeightError> {
        let n_rows = self.data.n_rows();
        let ys = self.data.scalar(&self.target)?;
        let adjust: Vec<&str> = self.adjust.iter().map(String::as_str).collect();
        let floor = FloorCounter::new();
        let values = (0..n_rows)
            .into_par_iter()
            .map(|i| {
                let k = self.target_kernel.value(&[ys[i]], &[y]);
                if k == 0.0 {
                    return Ok(0.0);
                }
                let mut s = Vec::new();
                gather(&self.data, &adjust, i, &mut s)?;
                let p = self.conditional.eval_floored(&[y], &s, &floor)?;
                Ok(k / (n_rows as f64 * floor_denominator(p, k, &floor)))
            })
            .collect::<Result<Vec<f64>, WeightError>>()?;
        WeightVector::new(values, y, floor.count())
    }
}

fn floor_denominator(p: f64, numerator: f64, floor: &FloorCounter) -> f64 {
    if p < DENSITY_FLOOR {
        if numerator > 0.0 {
            floor.record();
        }
        DENSITY_FLOOR
    } else {
        p
    }
}

/// Back-door weights `wᵢ = K[yᵢ − y] / (N · p̂(y | Sᵢ))`.
pub fn backdoor_weights(
    data: &Dataset,
    adjust: &[&str],
    target: &str,
    y: f64,
    kernels: &Kernels,
) -> Result<WeightVector, WeightError> {
    BackdoorModel::fit(data, adjust, target, kernels)?.weights(y)
}

/// Fitted front-door conditional `p̂(z | y)`.
#[derive(Debug, Clone)]
pub struct FrontdoorModel {
    data: Dataset,
    mediator: String,
    target: String,
    conditional: ConditionalEstimate,
}

impl FrontdoorModel {
    pub fn fit(
        data: &Dataset,
        mediator: &str,
        target: &str,
        kernels: &Kernels,
    ) -> Result<Self, WeightError> {
        target_kernel(data, target, kernels)?;
        Ok(FrontdoorModel {
            data: data.clone(),
            mediator: mediator.to_string(),
            target: target.to_string(),
            conditional: conditional(data, &[mediator], &[target], kernels)?,
        })
    }

    /// `wᵢ = p̂(zᵢ | y) / (N · p̂(zᵢ | yᵢ))`.
    pub fn weights(&self, y: f64) -> Result<WeightVector, WeightError> {
        let n_rows = self.data.n_rows();
        let ys = self.data.scalar(&self.target)?;
        let zs = self.data.variable(&self.mediator)?;
        let floor = FloorCounter::new();
        let values = (0..n_rows)
            .into_par_iter()
            .map(|i| {
                let z = zs.row(i);
                let num = self.conditional.eval_floored(z, &[y], &floor)?;
                if num == 0.0 {
                    return Ok(0.0);
                }
                let den = self.conditional.eval_floored(z, &[ys[i]], &floor)?;
                Ok(num / (n_rows as f64 * floor_denominator(den, num, &floor)))
            })
            .collect::<Result<Vec<f64>, WeightError>>()?;
        WeightVector::new(values, y, floor.count())
    }
}

/// Front-door weights `wᵢ = p̂(zᵢ | y) / (N · p̂(zᵢ | yᵢ))`.
pub fn frontdoor_weights(
    data: &Dataset,
    mediator: &str,
    target: &str,
    y: f64,
    kernels: &Kernels,
) -> Result<WeightVector, WeightError> {
    FrontdoorModel::fit(data, mediator, target, kernels)?.weights(y)
}

/// Fitted `p̂(z | w, y)` for the Tikka graph.
#[derive(Debug, Clone)]
pub struct TikkaModel {
    data: Dataset,
    w: String,
    z: String,
    target: String,
    conditional: ConditionalEstimate,
}

impl TikkaModel {
    pub fn fit(
        data: &Dataset,
        w: &str,
        z: &str,
        target: &str,
        kernels: &Kernels,
    ) -> Result<Self, WeightError> {
        target_kernel(data, target, kernels)?;
        Ok(TikkaModel {
            data: data.clone(),
            w: w.to_string(),
            z: z.to_string(),
            target: target.to_string(),
            conditional: conditional(data, &[z], &[w, target], kernels)?,
        })
    }

    /// `wₙ = p̂(zₙ | wₙ, y) / (N · p̂(zₙ | wₙ, yₙ))`.
    pub fn weights(&self, y: f64) -> Result<WeightVector, WeightError> {
        let n_rows = self.data.n_rows();
        let ys = self.data.scalar(&self.target)?;
        let ws = self.data.variable(&self.w)?;
        let zs = self.data.variable(&self.z)?;
        let floor = FloorCounter::new();
        let values = (0..n_rows)
            .into_par_iter()
            .map(|n| {
                let mut given = ws.row(n).to_vec();
                given.push(y);
                let num = self.conditional.eval_floored(zs.row(n), &given, &floor)?;
                if num == 0.0 {
                    return Ok(0.0);
                }
                *given.last_mut().expect("target slot") = ys[n];
                let den = self.conditional.eval_floored(zs.row(n), &given, &floor)?;
                Ok(num / (n_rows as f64 * floor_denominator(den, num, &floor)))
            })
            .collect::<Result<Vec<f64>, WeightError>>()?;
        WeightVector::new(values, y, floor.count())
    }
}

/// Tikka-graph weights `wₙ = p̂(zₙ | wₙ, y) / (N · p̂(zₙ | wₙ, yₙ))`.
pub fn tikka_weights(
    data: &Dataset,
    w: &str,
    z: &str,
    target: &str,
    y: f64,
    kernels: &Kernels,
) -> Result<WeightVector, WeightError> {
    TikkaModel::fit(data, w, z, target, kernels)?.weights(y)
}

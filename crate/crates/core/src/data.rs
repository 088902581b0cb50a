//! Column-typed observation tables.
//!
//! A [`Dataset`] holds `N` rows over named variables. Each variable is either
//! discrete (integer codes, stored as `f64` so every value shares one numeric
//! representation) or continuous with a fixed dimension. Multi-dimensional
//! variables are stored row-major, `dimension` values per row.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{name}` has {got} values, expected {expected}")]
    LengthMismatch {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("discrete variable `{name}` holds non-integer value {value}")]
    NonIntegerDiscrete { name: String, value: f64 },
    #[error("variable `{name}` holds non-finite value")]
    NonFinite { name: String },
    #[error("invalid variable kind for `{name}`: {reason}")]
    InvalidKind { name: String, reason: String },
    #[error("row index {index} out of range for {n_rows} rows")]
    RowOutOfRange { index: usize, n_rows: usize },
    #[error("variable `{0}` must be one-dimensional here")]
    NotScalar(String),
}

/// Sample space of a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Discrete { cardinality: usize },
    Continuous { dimension: usize },
}

impl VarKind {
    /// Number of stored values per row.
    pub fn width(&self) -> usize {
        match *self {
            VarKind::Discrete { .. } => 1,
            VarKind::Continuous { dimension } => dimension,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, VarKind::Discrete { .. })
    }

    pub fn validate(&self, name: &str) -> Result<(), DataError> {
        match *self {
            VarKind::Discrete { cardinality } if cardinality < 2 => Err(DataError::InvalidKind {
                name: name.to_string(),
                reason: format!("discrete cardinality must be at least 2, got {cardinality}"),
            }),
            VarKind::Continuous { dimension } if dimension < 1 => Err(DataError::InvalidKind {
                name: name.to_string(),
                reason: "continuous dimension must be at least 1".to_string(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKind::Discrete { cardinality } => write!(f, "discrete {cardinality}"),
            VarKind::Continuous { dimension } => write!(f, "continuous {dimension}"),
        }
    }
}

impl std::str::FromStr for VarKind {
    type Err = String;

    /// Parses `discrete <cardinality>` or `continuous <dimension>`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split_whitespace();
        let (Some(kind), Some(size), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!(
                "expected `discrete <k>` or `continuous <d>`, got `{s}`"
            ));
        };
        let size: usize = size
            .parse()
            .map_err(|_| format!("`{size}` is not a size"))?;
        let parsed = match kind {
            "discrete" => VarKind::Discrete { cardinality: size },
            "continuous" => VarKind::Continuous { dimension: size },
            other => return Err(format!("unknown kind `{other}`")),
        };
        parsed.validate("").map_err(|e| e.to_string())?;
        Ok(parsed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    name: String,
    kind: VarKind,
    values: Vec<f64>,
}

impl Variable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn width(&self) -> usize {
        self.kind.width()
    }

    /// All values, row-major.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The values of row `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.width();
        &self.values[i * w..(i + 1) * w]
    }

    /// Scalar value of row `i`; only meaningful for one-dimensional variables.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i * self.width()]
    }
}

/// An immutable table of `N` observations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    n_rows: usize,
    variables: Vec<Variable>,
    index: HashMap<String, usize>,
}

impl Dataset {
    /// An empty table with a fixed row count; add variables with the `with_*` methods.
    pub fn new(n_rows: usize) -> Self {
        Dataset {
            n_rows,
            variables: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn with_variable(
        mut self,
        name: &str,
        kind: VarKind,
        values: Vec<f64>,
    ) -> Result<Self, DataError> {
        kind.validate(name)?;
        if self.index.contains_key(name) {
            return Err(DataError::DuplicateVariable(name.to_string()));
        }
        let expected = self.n_rows * kind.width();
        if values.len() != expected {
            return Err(DataError::LengthMismatch {
                name: name.to_string(),
                got: values.len(),
                expected,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(DataError::NonFinite {
                name: name.to_string(),
            });
        }
        if kind.is_discrete() {
            if let Some(&value) = values.iter().find(|v| v.fract() != 0.0) {
                return Err(DataError::NonIntegerDiscrete {
                    name: name.to_string(),
                    value,
                });
            }
        }
        self.index.insert(name.to_string(), self.variables.len());
        self.variables.push(Variable {
            name: name.to_string(),
            kind,
            values,
        });
        Ok(self)
    }

    pub fn with_discrete(
        self,
        name: &str,
        cardinality: usize,
        values: Vec<i64>,
    ) -> Result<Self, DataError> {
        let values = values.into_iter().map(|v| v as f64).collect();
        self.with_variable(name, VarKind::Discrete { cardinality }, values)
    }

    pub fn with_continuous(self, name: &str, values: Vec<f64>) -> Result<Self, DataError> {
        self.with_variable(name, VarKind::Continuous { dimension: 1 }, values)
    }

    pub fn with_continuous_matrix(
        self,
        name: &str,
        dimension: usize,
        values: Vec<f64>,
    ) -> Result<Self, DataError> {
        self.with_variable(name, VarKind::Continuous { dimension }, values)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn is_empty(&self) -> bool {
        self.n_rows == 0
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.variables.iter().map(|v| v.name.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn variable(&self, name: &str) -> Result<&Variable, DataError> {
        self.index
            .get(name)
            .map(|&i| &self.variables[i])
            .ok_or_else(|| DataError::UnknownVariable(name.to_string()))
    }

    /// A one-dimensional variable's values.
    pub fn scalar(&self, name: &str) -> Result<&[f64], DataError> {
        let var = self.variable(name)?;
        if var.width() != 1 {
            return Err(DataError::NotScalar(name.to_string()));
        }
        Ok(var.values())
    }

    /// Sorted distinct values of a one-dimensional variable.
    pub fn support(&self, name: &str) -> Result<Vec<f64>, DataError> {
        let mut values = self.scalar(name)?.to_vec();
        values.sort_by(f64::total_cmp);
        values.dedup();
        Ok(values)
    }

    /// Concatenates the listed variables of row `i` into `out`.
    pub fn gather_row(
        &self,
        names: &[&str],
        i: usize,
        out: &mut Vec<f64>,
    ) -> Result<(), DataError> {
        for name in names {
            out.extend_from_slice(self.variable(name)?.row(i));
        }
        Ok(())
    }

    /// Row-major matrix of the listed variables, one row per observation.
    pub fn matrix(&self, names: &[&str]) -> Result<(usize, Vec<f64>), DataError> {
        let vars = names
            .iter()
            .map(|n| self.variable(n))
            .collect::<Result<Vec<_>, _>>()?;
        let width: usize = vars.iter().map(|v| v.width()).sum();
        let mut out = Vec::with_capacity(width * self.n_rows);
        for i in 0..self.n_rows {
            for v in &vars {
                out.extend_from_slice(v.row(i));
            }
        }
        Ok((width, out))
    }

    /// A new table holding the given rows, in the given order (repeats allowed).
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset, DataError> {
        if let Some(&index) = rows.iter().find(|&&r| r >= self.n_rows) {
            return Err(DataError::RowOutOfRange {
                index,
                n_rows: self.n_rows,
            });
        }
        let mut out = Dataset::new(rows.len());
        for var in &self.variables {
            let w = var.width();
            let mut values = Vec::with_capacity(rows.len() * w);
            for &r in rows {
                values.extend_from_slice(var.row(r));
            }
            out = out.with_variable(&var.name, var.kind, values)?;
        }
        Ok(out)
    }

    /// A new table holding only the named variables.
    pub fn project(&self, names: &[&str]) -> Result<Dataset, DataError> {
        let mut out = Dataset::new(self.n_rows);
        for name in names {
            let var = self.variable(name)?;
            out = out.with_variable(name, var.kind, var.values.clone())?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Dataset {
        Dataset::new(3)
            .with_discrete("y", 2, vec![1, 2, 1])
            .unwrap()
            .with_continuous_matrix("x", 2, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
            .unwrap()
    }

    #[test]
    fn rows_and_matrix() {
        let d = toy();
        assert_eq!(d.variable("x").unwrap().row(1), &[2.0, 3.0]);
        let (w, m) = d.matrix(&["y", "x"]).unwrap();
        assert_eq!(w, 3);
        assert_eq!(&m[3..6], &[2.0, 2.0, 3.0]);
        assert_eq!(d.support("y").unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn rejects_bad_columns() {
        let d = Dataset::new(2);
        assert!(matches!(
            d.clone().with_continuous("a", vec![1.0]),
            Err(DataError::LengthMismatch { .. })
        ));
        assert!(matches!(
            d.clone()
                .with_variable("a", VarKind::Discrete { cardinality: 2 }, vec![1.5, 1.0]),
            Err(DataError::NonIntegerDiscrete { .. })
        ));
        assert!(matches!(
            d.with_discrete("a", 1, vec![1, 1]),
            Err(DataError::InvalidKind { .. })
        ));
        assert_eq!(
            toy().variable("nope").unwrap_err(),
            DataError::UnknownVariable("nope".into())
        );
    }

    #[test]
    fn kind_round_trip() {
        for k in [
            VarKind::Discrete { cardinality: 3 },
            VarKind::Continuous { dimension: 784 },
        ] {
            assert_eq!(k.to_string().parse::<VarKind>().unwrap(), k);
        }
        assert!("discrete 1".parse::<VarKind>().is_err());
        assert!("ordinal 2".parse::<VarKind>().is_err());
    }

    #[test]
    fn select_rows_repeats() {
        let d = toy().select_rows(&[2, 2, 0]).unwrap();
        assert_eq!(d.n_rows(), 3);
        assert_eq!(d.scalar("y").unwrap(), &[1.0, 1.0, 1.0]);
        assert_eq!(d.variable("x").unwrap().row(0), &[4.0, 5.0]);
        assert!(toy().select_rows(&[3]).is_err());
    }
}

//! Dataset files: CSV tables, the `<file>.meta` sidecar and binary image blobs.
//!
//! A one-dimensional variable `v` occupies the CSV column `v`; a variable of
//! dimension `d` occupies `v_1, …, v_d`. The sidecar is a plain text file of
//! `key = value` lines; it records the schema (`columns` and one `var.<name>`
//! line per variable) so a table can be read back without other context.
//! With [`ImageFormat::Blob`], byte-valued image variables are written to
//! `<file>.<var>.blob` instead, one row after another, and the sidecar
//! references the blob with a `blob.<var>` line.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::data::{DataError, Dataset, VarKind};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: String, column: String },
    #[error("{path}: row {row}, column `{column}`: `{value}` is not a number")]
    Parse {
        path: String,
        row: usize,
        column: String,
        value: String,
    },
    #[error("{path}: line {line}: {message}")]
    Metadata {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: no schema for the table (no sidecar and none supplied)")]
    NoSchema { path: String },
    #[error(transparent)]
    Data(#[from] DataError),
}

fn file_err(path: &Path, e: impl ToString) -> IoError {
    IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Ordered `key = value` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metadata(BTreeMap<String, String>);

impl Metadata {
    pub fn new() -> Self {
        Metadata::default()
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn extend(&mut self, other: &Metadata) {
        for (k, v) in other.entries() {
            self.set(k, v);
        }
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, path: &Path) -> Result<Self, IoError> {
        let mut out = Metadata::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(IoError::Metadata {
                    path: path.display().to_string(),
                    line: i + 1,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            out.set(k.trim(), v.trim());
        }
        Ok(out)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Metadata::parse(
            &fs::read_to_string(path).map_err(|e| file_err(path, e))?,
            path,
        )
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        fs::write(path, self.render()).map_err(|e| file_err(path, e))
    }

    /// The table schema recorded by [`write_dataset`], if any.
    pub fn schema(&self, path: &Path) -> Result<Option<Vec<(String, VarKind)>>, IoError> {
        let Some(columns) = self.get("columns") else {
            return Ok(None);
        };
        let bad = |message: String| IoError::Metadata {
            path: path.display().to_string(),
            line: 0,
            message,
        };
        columns
            .split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(|name| {
                let kind = self
                    .get(&format!("var.{name}"))
                    .ok_or_else(|| bad(format!("no `var.{name}` entry")))?;
                let kind = kind
                    .parse::<VarKind>()
                    .map_err(|m| bad(format!("var.{name}: {m}")))?;
                Ok((name.to_string(), kind))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

/// The sidecar file belonging to a table.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

fn blob_path(path: &Path, var: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(format!(".{var}.blob"));
    PathBuf::from(s)
}

/// CSV column names of a variable.
pub fn column_names(name: &str, width: usize) -> Vec<String> {
    if width == 1 {
        vec![name.to_string()]
    } else {
        (1..=width).map(|j| format!("{name}_{j}")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageFormat {
    #[default]
    Csv,
    Blob,
}

fn is_bytes(values: &[f64]) -> bool {
    values
        .iter()
        .all(|&v| v.fract() == 0.0 && (0.0..=255.0).contains(&v))
}

fn format_value(v: f64, discrete: bool) -> String {
    if discrete {
        (v as i64).to_string()
    } else {
        v.to_string()
    }
}

/// Writes `data` (plus integer `extra` columns) as CSV to `out`, leaving out the variables in `skip`.
pub fn write_csv<W: Write>(
    out: W,
    data: &Dataset,
    extra: &[(&str, &[usize])],
    skip: &[&str],
) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    let vars: Vec<_> = data
        .variables()
        .iter()
        .filter(|v| !skip.contains(&v.name()))
        .collect();
    let mut header: Vec<String> = vars
        .iter()
        .flat_map(|v| column_names(v.name(), v.width()))
        .collect();
    header.extend(extra.iter().map(|(name, _)| name.to_string()));
    w.write_record(&header)?;
    let mut record = Vec::with_capacity(header.len());
    for i in 0..data.n_rows() {
        record.clear();
        for v in &vars {
            let discrete = v.kind().is_discrete();
            record.extend(v.row(i).iter().map(|&x| format_value(x, discrete)));
        }
        record.extend(extra.iter().map(|(_, col)| col[i].to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the CSV, any blobs and the sidecar (schema merged into `meta`).
pub fn write_dataset(
    path: &Path,
    data: &Dataset,
    extra: &[(&str, &[usize])],
    format: ImageFormat,
    meta: &Metadata,
) -> Result<(), IoError> {
    let mut sidecar = meta.clone();
    let names: Vec<&str> = data.names().collect();
    sidecar.set("columns", names.join(","));
    sidecar.set("rows", data.n_rows());
    let mut blobs = Vec::new();
    for v in data.variables() {
        sidecar.set(&format!("var.{}", v.name()), v.kind());
        if format == ImageFormat::Blob && v.width() > 1 && is_bytes(v.values()) {
            let bp = blob_path(path, v.name());
            let bytes: Vec<u8> = v.values().iter().map(|&x| x as u8).collect();
            fs::write(&bp, bytes).map_err(|e| file_err(&bp, e))?;
            let file_name = bp
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default();
            sidecar.set(&format!("blob.{}", v.name()), file_name);
            blobs.push(v.name());
        }
    }
    let file = fs::File::create(path).map_err(|e| file_err(path, e))?;
    write_csv(std::io::BufWriter::new(file), data, extra, &blobs).map_err(|e| file_err(path, e))?;
    sidecar.write(&sidecar_path(path))
}

/// Reads a table. The schema comes from `schema` when given, else from the
/// sidecar. Columns outside the schema are ignored.
pub fn read_dataset(path: &Path, schema: Option<&[(String, VarKind)]>) -> Result<Dataset, IoError> {
    let meta_path = sidecar_path(path);
    let meta = if meta_path.exists() {
        Metadata::read(&meta_path)?
    } else {
        Metadata::new()
    };
    let stored;
    let schema = match schema {
        Some(s) => s,
        None => {
            stored = meta.schema(&meta_path)?.ok_or_else(|| IoError::NoSchema {
                path: path.display().to_string(),
            })?;
            &stored
        }
    };

    let mut reader = csv::Reader::from_path(path).map_err(|e| file_err(path, e))?;
    let headers = reader.headers().map_err(|e| file_err(path, e))?.clone();
    let position: HashMap<&str, usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim(), i))
        .collect();
    let mut plan: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, (name, kind)) in schema.iter().enumerate() {
        if meta.get(&format!("blob.{name}")).is_some() {
            continue;
        }
        let cols = column_names(name, kind.width())
            .into_iter()
            .map(|c| {
                position
                    .get(c.as_str())
                    .copied()
                    .ok_or_else(|| IoError::MissingColumn {
                        path: path.display().to_string(),
                        column: c,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        plan.push((k, cols));
    }
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); schema.len()];
    let mut n_rows = 0;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| file_err(path, e))?;
        for (k, cols) in &plan {
            for &c in cols {
                let raw = record.get(c).unwrap_or("").trim();
                let v = raw.parse::<f64>().map_err(|_| IoError::Parse {
                    path: path.display().to_string(),
                    row: row + 1,
                    column: headers[c].to_string(),
                    value: raw.to_string(),
                })?;
                columns[*k].push(v);
            }
        }
        n_rows += 1;
    }
    let mut data = Dataset::new(n_rows);
    for (k, (name, kind)) in schema.iter().enumerate() {
        let values = match meta.get(&format!("blob.{name}")) {
            Some(file) => {
                let bp = path.parent().unwrap_or(Path::new("")).join(file);
                fs::read(&bp)
                    .map_err(|e| file_err(&bp, e))?
                    .into_iter()
                    .map(f64::from)
                    .collect()
            }
            None => std::mem::take(&mut columns[k]),
        };
        data = data.with_variable(name, *kind, values)?;
    }
    Ok(data)
}

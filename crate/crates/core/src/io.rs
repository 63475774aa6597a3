//! File formats: configuration JSON (exact Gram or float coordinates),
//! lattice JSON, Euclidean point-set JSON, 0/1 adjacency text, group JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Matrix, Rational};
use crate::numerics::CoordinateSet;

#[derive(Debug, Serialize, Deserialize)]
struct ConfigDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<Vec<f64>>>,
}

/// A configuration file is either exact (`"gram"`) or float-only (`"coords"`).
#[derive(Debug, Clone)]
pub enum ConfigInput {
    Exact(Configuration),
    Float(CoordinateSet),
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

fn value_to_rational(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{field}: {e}"))),
        Value::Number(n) if n.is_i64() => Ok(crate::exact::int(n.as_i64().unwrap_or_default())),
        other => Err(Error::Parse(format!("{field}: expected a rational string, found {other}"))),
    }
}

fn rational_rows(rows: &[Vec<Value>], name: &str) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, v)| value_to_rational(v, &format!("{name}[{i}][{j}]"))).collect())
        .collect()
}

fn square(rows: Vec<Vec<Rational>>) -> Result<Matrix> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::NotSquare { row: i, len: r.len(), expected: n });
    }
    Matrix::from_rows(rows)
}

pub fn parse_config_input(text: &str) -> Result<ConfigInput> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(json_err)?;
    match (doc.gram, doc.coords) {
        (Some(gram), None) => {
            let m = square(rational_rows(&gram, "gram")?)?;
            let mut c = Configuration::new(m, doc.label)?;
            if let Some(labels) = doc.labels {
                c = c.with_labels(labels)?;
            }
            Ok(ConfigInput::Exact(c))
        }
        (None, Some(coords)) => Ok(ConfigInput::Float(CoordinateSet::new(coords, doc.label)?)),
        (Some(_), Some(_)) => Err(Error::Parse("document has both \"gram\" and \"coords\"".into())),
        (None, None) => Err(Error::Parse("document needs a \"gram\" or \"coords\" field".into())),
    }
}

/// Reads an exact configuration; float-only documents are rejected.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    match parse_config_input(text)? {
        ConfigInput::Exact(c) => Ok(c),
        ConfigInput::Float(_) => Err(Error::FloatOnly("expected a \"gram\" document".into())),
    }
}

pub fn configuration_to_json(c: &Configuration) -> String {
    let n = c.len();
    let gram = (0..n).map(|i| (0..n).map(|j| Value::String(format_rational(c.inner(i, j)))).collect()).collect();
    let doc = ConfigDoc {
        label: c.label().map(str::to_owned),
        labels: c.labels().map(<[String]>::to_vec),
        gram: Some(gram),
        coords: None,
    };
    to_pretty(&doc)
}

pub fn coordinates_to_json(p: &CoordinateSet) -> String {
    let doc =
        ConfigDoc { label: p.label().map(str::to_owned), labels: None, gram: None, coords: Some(p.points().to_vec()) };
    to_pretty(&doc)
}

pub(crate) fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeDoc {
    #[serde(default)]
    pub label: String,
    pub gram: Vec<Vec<i64>>,
}

pub fn parse_lattice(text: &str) -> Result<crate::lattice::LatticeGram> {
    let doc: LatticeDoc = serde_json::from_str(text).map_err(json_err)?;
    crate::lattice::LatticeGram::new(doc.gram, Some(doc.label).filter(|s| !s.is_empty()))
}

/// Euclidean point set, optionally periodic.
#[derive(Debug, Clone)]
pub struct EuclideanInput {
    pub points: Vec<Vec<Rational>>,
    pub period: Option<Vec<Vec<Rational>>>,
    pub cutoff: Option<Rational>,
}

#[derive(Debug, Deserialize)]
struct EuclideanDoc {
    points: Vec<Vec<Value>>,
    #[serde(default)]
    period: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    cutoff: Option<Value>,
}

pub fn parse_euclidean(text: &str) -> Result<EuclideanInput> {
    let doc: EuclideanDoc = serde_json::from_str(text).map_err(json_err)?;
    Ok(EuclideanInput {
        points: rational_rows(&doc.points, "points")?,
        period: doc.period.as_deref().map(|p| rational_rows(p, "period")).transpose()?,
        cutoff: doc.cutoff.as_ref().map(|v| value_to_rational(v, "cutoff")).transpose()?,
    })
}

/// Whitespace-separated 0/1 adjacency matrix, one row per line. Blank lines
/// are ignored and a trailing `\\` (as in a LaTeX tabular) is tolerated.
pub fn parse_adjacency(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim().trim_end_matches("\\\\").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(col, tok)| match tok {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => {
                    Err(Error::Parse(format!("line {} column {}: expected 0 or 1, found `{tok}`", lineno + 1, col + 1)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::NotSquare { row: i, len: r.len(), expected: n });
    }
    Ok(rows)
}

pub fn adjacency_to_text(a: &[Vec<u8>]) -> String {
    let mut s = String::new();
    for row in a {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

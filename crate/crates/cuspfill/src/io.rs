//! JSON input schemas for plumbings, surgery diagrams, configuration specs
//! and embeddings. Unknown fields are rejected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{ConfigurationSpec, EmbeddingError, EmbeddingSolution};
use crate::lattice::{HomologyClass, IntMatrix};
use crate::plumbing::{PlumbingError, PlumbingGraph};
use crate::spin_gamma::{GammaError, SurgeryDiagram};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("{0}")]
    Invalid(String),
}

pub fn parse_plumbing(text: &str) -> Result<PlumbingGraph, IoError> {
    let g: PlumbingGraph = serde_json::from_str(text)?;
    g.validate()?;
    Ok(g)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub linking: Vec<Vec<i64>>,
    pub rot: Vec<i64>,
    #[serde(default)]
    pub zset: BTreeSet<usize>,
}

pub fn parse_diagram(text: &str) -> Result<SurgeryDiagram, IoError> {
    let f: DiagramFile = serde_json::from_str(text)?;
    let n = f.linking.len();
    if n == 0 || f.linking.iter().any(|r| r.len() != n) {
        return Err(IoError::Invalid("linking must be a non-empty square matrix".into()));
    }
    Ok(SurgeryDiagram::new(IntMatrix::from_i64(&f.linking), f.rot, f.zset)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpecFile {
    #[serde(rename = "T")]
    pub t: Vec<Vec<i64>>,
    pub line: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactSpecFile {
    pub self_intersections: Vec<i64>,
    /// (i, j, multiplicity); repeated pairs add up.
    pub intersections: Vec<(usize, usize, i64)>,
    pub line: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Matrix(MatrixSpecFile),
    Contacts(ContactSpecFile),
}

pub fn parse_spec(text: &str) -> Result<ConfigurationSpec, IoError> {
    let f: SpecFile = serde_json::from_str(text)?;
    let (spec, labels) = match f {
        SpecFile::Matrix(m) => (ConfigurationSpec::new(m.t, m.line)?, m.labels),
        SpecFile::Contacts(c) => {
            (ConfigurationSpec::from_contacts(&c.self_intersections, &c.intersections, c.line)?, c.labels)
        }
    };
    match labels {
        Some(l) => Ok(ConfigurationSpec::with_labels(spec.t().to_vec(), spec.line(), l)?),
        None => Ok(spec),
    }
}

pub fn spec_to_file(spec: &ConfigurationSpec) -> MatrixSpecFile {
    MatrixSpecFile { t: spec.t().to_vec(), line: spec.line(), labels: Some(spec.labels().to_vec()) }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub classes: Vec<HomologyClass>,
    /// Number of exceptional classes; defaults to the number used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

/// Embedding plus the ambient N (at least the number of indices used).
pub fn parse_embedding(text: &str) -> Result<(EmbeddingSolution, usize), IoError> {
    let f: EmbeddingFile = serde_json::from_str(text)?;
    let sol = EmbeddingSolution::new(f.classes);
    let top = sol.classes.iter().filter_map(|c| c.max_index()).max().map_or(0, |i| i + 1);
    let n = f.n.unwrap_or(top);
    if n < top {
        return Err(IoError::Invalid(format!("n = {n} but classes use index {}", top - 1)));
    }
    Ok((sol, n))
}

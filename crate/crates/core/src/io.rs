//! JSON documents. Every top-level document carries `"schema": 1`; nested
//! documents may omit it. Unknown fields are rejected and rationals are
//! written as strings.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane, LineDirection};
use crate::error::{Error, Result};
use crate::katz::{CharacterValue, MonodromyTuple};
use crate::linalg::complex::{c, CMat};
use crate::linalg::QMatrix;
use crate::pfaffian::PfaffianSystem;
use crate::rational::{format_q, parse_q, serde_q, serde_q_vec, Q};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_ok(schema: Option<u32>, top_level: bool, what: &str) -> Result<()> {
    match schema {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::Parse(format!(
            "{what}: unsupported schema version {v}"
        ))),
        None if top_level => Err(Error::Parse(format!("{what}: missing \"schema\" field"))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneDoc {
    pub label: String,
    #[serde(with = "serde_q_vec")]
    pub coeffs: Vec<Q>,
    #[serde(with = "serde_q")]
    pub constant: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    #[serde(with = "serde_q_vec")]
    pub direction: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub arrangement: ArrangementDoc,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    pub residues: BTreeMap<String, Vec<Vec<String>>>,
}

/// Complex entries as `[re, im]`; `matrices[k][i][j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub rank: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    #[serde(with = "serde_q")]
    pub lambda: Q,
}

impl ArrangementDoc {
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        ArrangementDoc {
            schema: None,
            dim: arr.dim(),
            hyperplanes: arr
                .hyperplanes()
                .iter()
                .map(|h| HyperplaneDoc {
                    label: h.label().to_string(),
                    coeffs: h.coeffs().to_vec(),
                    constant: h.constant().clone(),
                })
                .collect(),
        }
    }

    pub fn to_arrangement(&self, top_level: bool) -> Result<Arrangement> {
        schema_ok(self.schema, top_level, "arrangement")?;
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane::new(h.label.clone(), h.coeffs.clone(), h.constant.clone()))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hs)
    }
}

pub fn matrix_to_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(format_q).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>], n: usize, what: &str) -> Result<QMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what} must be {n}x{n}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(if n == 0 {
        QMatrix::zeros(0, 0)
    } else {
        QMatrix::from_rows(parsed)
    })
}

impl SystemDoc {
    pub fn from_system(sys: &PfaffianSystem) -> Self {
        SystemDoc {
            schema: Some(SCHEMA_VERSION),
            arrangement: ArrangementDoc::from_arrangement(sys.arrangement()),
            dim_e: sys.dim_e(),
            residues: sys
                .arrangement()
                .hyperplanes()
                .iter()
                .zip(sys.residues())
                .map(|(h, a)| (h.label().to_string(), matrix_to_strings(a)))
                .collect(),
        }
    }

    /// Builds the system; integrability is enforced unless `unchecked`.
    pub fn to_system(&self, unchecked: bool) -> Result<PfaffianSystem> {
        schema_ok(self.schema, true, "system")?;
        let arr = self.arrangement.to_arrangement(false)?;
        let residues = self
            .residues
            .iter()
            .map(|(l, rows)| {
                Ok((
                    l.clone(),
                    matrix_from_strings(rows, self.dim_e, &format!("residue {l:?}"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PfaffianSystem::from_labeled(arr, self.dim_e, residues, !unchecked)
    }
}

impl TupleDoc {
    pub fn from_tuple(t: &MonodromyTuple) -> Self {
        TupleDoc {
            schema: Some(SCHEMA_VERSION),
            rank: t.rank(),
            matrices: t
                .matrices()
                .iter()
                .map(|m| {
                    (0..m.nrows())
                        .map(|i| {
                            (0..m.ncols())
                                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            labels: Some(t.labels().to_vec()),
        }
    }

    pub fn to_tuple(&self) -> Result<MonodromyTuple> {
        schema_ok(self.schema, true, "tuple")?;
        let r = self.rank;
        let mut ms = Vec::with_capacity(self.matrices.len());
        for (k, rows) in self.matrices.iter().enumerate() {
            if rows.len() != r || rows.iter().any(|row| row.len() != r) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {} must be {r}x{r}",
                    k + 1
                )));
            }
            ms.push(CMat::from_fn(r, r, |i, j| c(rows[i][j][0], rows[i][j][1])));
        }
        match &self.labels {
            Some(l) => MonodromyTuple::with_labels(r, ms, l.clone()),
            None => MonodromyTuple::new(r, ms),
        }
    }
}

impl CharacterDoc {
    pub fn from_character(ch: &CharacterValue) -> Self {
        CharacterDoc {
            schema: Some(SCHEMA_VERSION),
            lambda: ch.lambda().clone(),
        }
    }

    pub fn to_character(&self) -> Result<CharacterValue> {
        schema_ok(self.schema, true, "character")?;
        CharacterValue::new(&self.lambda)
    }
}

fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    parse_doc::<ArrangementDoc>(text)?.to_arrangement(true)
}

pub fn parse_line(text: &str) -> Result<LineDirection> {
    let doc: LineDoc = parse_doc(text)?;
    schema_ok(doc.schema, true, "line")?;
    LineDirection::new(doc.direction)
}

pub fn parse_system(text: &str, unchecked: bool) -> Result<PfaffianSystem> {
    parse_doc::<SystemDoc>(text)?.to_system(unchecked)
}

pub fn parse_tuple(text: &str) -> Result<MonodromyTuple> {
    parse_doc::<TupleDoc>(text)?.to_tuple()
}

pub fn parse_character(text: &str) -> Result<CharacterValue> {
    parse_doc::<CharacterDoc>(text)?.to_character()
}

pub fn arrangement_json(arr: &Arrangement) -> String {
    let mut doc = ArrangementDoc::from_arrangement(arr);
    doc.schema = Some(SCHEMA_VERSION);
    to_pretty(&doc)
}

pub fn line_json(y: &LineDirection) -> String {
    to_pretty(&LineDoc {
        schema: Some(SCHEMA_VERSION),
        direction: y.direction().to_vec(),
    })
}

pub fn system_json(sys: &PfaffianSystem) -> String {
    to_pretty(&SystemDoc::from_system(sys))
}

pub fn tuple_json(t: &MonodromyTuple) -> String {
    to_pretty(&TupleDoc::from_tuple(t))
}

pub fn character_json(ch: &CharacterValue) -> String {
    to_pretty(&CharacterDoc::from_character(ch))
}

pub fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

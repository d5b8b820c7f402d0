use arrmc_core::arrangement::{Arrangement, Flat};
use arrmc_core::io::TupleDoc;
use arrmc_core::katz::{MonodromyTuple, TupleIsoReport};
use arrmc_core::linalg::complex::{CMat, C64};
use arrmc_core::linalg::QMatrix;
use arrmc_core::rational::{format_q, Q};
use arrmc_core::Error;
use serde_json::{json, Value};

/// Result of a command: a JSON report, whether the tested property holds,
/// and optionally a document for `--out`.
pub struct Outcome {
    pub report: Value,
    pub holds: bool,
    pub document: Option<String>,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome {
            report,
            holds: true,
            document: None,
        }
    }

    pub fn verdict(report: Value, holds: bool) -> Self {
        Outcome {
            report,
            holds,
            document: None,
        }
    }

    pub fn with_document(mut self, doc: String) -> Self {
        self.document = Some(doc);
        self
    }
}

pub fn q(x: &Q) -> Value {
    Value::String(format_q(x))
}

pub fn qvec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn qmatrix(m: &QMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| qvec(m.row(i))).collect())
}

/// Column basis as a list of vectors.
pub fn qcolumns(m: &QMatrix) -> Value {
    Value::Array(m.columns().iter().map(|c| qvec(c)).collect())
}

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn cvec(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

pub fn cmatrix(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn tuple(t: &MonodromyTuple) -> Value {
    serde_json::to_value(TupleDoc::from_tuple(t)).expect("tuple serializes")
}

pub fn flat(f: &Flat, arr: &Arrangement) -> Value {
    json!({
        "rank": f.rank(),
        "equations": f.pretty(),
        "containing": f.containing_labels(arr),
    })
}

pub fn tuple_iso(r: &TupleIsoReport) -> Value {
    json!({
        "isomorphic": r.isomorphic,
        "invariants_match": r.invariants_match,
        "hom_dim": r.hom_dim,
        "residual": finite(r.residual),
        "condition": finite(r.condition),
        "intertwiner": r.intertwiner.as_ref().map(cmatrix),
        "invariants": r.invariants.iter().map(|i| json!({
            "name": i.name,
            "lhs": cvec(&i.lhs),
            "rhs": cvec(&i.rhs),
            "diff": i.diff,
        })).collect::<Vec<_>>(),
    })
}

/// JSON has no infinity; non-finite values become `null`.
pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// Short machine-readable kind of an error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::DimensionMismatch(_) => "dimension-mismatch",
        Error::NotGoodLine { .. } => "not-good-line",
        Error::NonIntegrable { .. } => "non-integrable",
        Error::BaseOnProjectedHyperplane(_) => "base-on-projected-hyperplane",
        Error::Decone(_) => "decone",
        Error::StarConditionsFail(_) => "star-conditions-fail",
        Error::ParameterIntegral(_) => "parameter-integral",
        Error::AssumptionFail(_) => "assumption-fail",
        Error::TrivialCharacter => "trivial-character",
        Error::SingularInput(_) => "singular-input",
        Error::StepUnderflow(_) => "step-underflow",
        Error::ToleranceNotMet(_) => "tolerance-not-met",
        Error::Path(_) => "path",
        Error::UnknownStrategy { .. } => "unknown-strategy",
        Error::Internal(_) => "internal",
        Error::Json(_) => "json",
    }
}

/// Exit code: 1 for a failed mathematical precondition (the message is the
/// witness), 3 for numeric failures, 2 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotGoodLine { .. }
        | Error::NonIntegrable { .. }
        | Error::StarConditionsFail(_)
        | Error::AssumptionFail(_) => 1,
        Error::StepUnderflow(_)
        | Error::ToleranceNotMet(_)
        | Error::Path(_)
        | Error::Internal(_) => 3,
        _ => 2,
    }
}

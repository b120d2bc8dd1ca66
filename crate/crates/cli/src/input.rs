//! JSON input documents.
//!
//! ```json
//! {"kind": "lr-tuple", "n": 2, "entries": [[[1, 0], [0, 1]], [["1/2", 3], [0, -1]]]}
//! {"kind": "lr-pair", "n": 1, "entries": [[[[1, 2], [0, 3]]], [[[3, 1], [0, 1]]]]}
//! {"kind": "left-matrix", "l": 2, "n": 3, "entries": [[1, 0, 2], [0, 1, "-1/3"]]}
//! {"kind": "left-pair", "l": 2, "n": 2, "entries": [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]}
//! ```
//!
//! Rationals are JSON integers or strings `"p"` / `"p/q"`. Floats are rejected.

use semiinv::exact::parse_rational;
use semiinv::invariants::{LeftMatrix, MatrixTupleLR};
use semiinv::{RMatrix, Rational};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDocument {
    LrTuple(MatrixTupleLR),
    LrPair(MatrixTupleLR, MatrixTupleLR),
    LeftMatrix(LeftMatrix),
    LeftPair(LeftMatrix, LeftMatrix),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::LrTuple(_) => "lr-tuple",
            Self::LrPair(..) => "lr-pair",
            Self::LeftMatrix(_) => "left-matrix",
            Self::LeftPair(..) => "left-pair",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::LrTuple(t) => json!({"kind": self.kind(), "n": t.n(), "entries": tuple_json(t)}),
            Self::LrPair(a, b) => {
                json!({"kind": self.kind(), "n": a.n(), "entries": [tuple_json(a), tuple_json(b)]})
            }
            Self::LeftMatrix(m) => json!({
                "kind": self.kind(), "l": m.l(), "n": m.n(), "entries": matrix_json(m.matrix())
            }),
            Self::LeftPair(a, b) => json!({
                "kind": self.kind(), "l": a.l(), "n": a.n(),
                "entries": [matrix_json(a.matrix()), matrix_json(b.matrix())]
            }),
        }
    }
}

pub fn rational_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &RMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

pub fn tuple_json(t: &MatrixTupleLR) -> Value {
    Value::Array(t.matrices().iter().map(matrix_json).collect())
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_scalar(v: &Value, at: &str) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(semiinv::rat).ok_or_else(|| {
            bad(format!(
                "{at}: only integers or \"p/q\" strings are accepted, got {n}"
            ))
        }),
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| bad(format!("{at}: cannot parse rational {s:?}")))
        }
        other => Err(bad(format!("{at}: expected a rational, got {other}"))),
    }
}

fn array<'a>(v: &'a Value, len: usize, at: &str) -> Result<&'a [Value], CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{at}: expected an array")))?;
    if arr.len() != len {
        return Err(bad(format!(
            "{at}: expected {len} entries, found {}",
            arr.len()
        )));
    }
    Ok(arr)
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, at: &str) -> Result<RMatrix, CliError> {
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in array(v, rows, at)?.iter().enumerate() {
        for (j, x) in array(row, cols, &format!("{at}[{i}]"))?.iter().enumerate() {
            entries.push(parse_scalar(x, &format!("{at}[{i}][{j}]"))?);
        }
    }
    Ok(RMatrix::new(rows, cols, entries)?)
}

fn parse_tuple(v: &Value, n: usize, at: &str) -> Result<MatrixTupleLR, CliError> {
    let ms = array(v, n, at)?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, 2, 2, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixTupleLR::new(ms)?)
}

fn parse_left(v: &Value, l: usize, n: usize, at: &str) -> Result<LeftMatrix, CliError> {
    Ok(LeftMatrix::new(parse_matrix(v, l, n, at)?)?)
}

fn dimension(doc: &Value, key: &str) -> Result<usize, CliError> {
    let d = doc
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(format!("missing or invalid dimension `{key}`")))?;
    if d == 0 {
        return Err(bad(format!("dimension `{key}` must be positive")));
    }
    usize::try_from(d).map_err(|_| bad(format!("dimension `{key}` is too large")))
}

pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `kind`"))?;
    let entries = doc.get("entries").ok_or_else(|| bad("missing `entries`"))?;
    let n = dimension(&doc, "n")?;
    match kind {
        "lr-tuple" => Ok(InputDocument::LrTuple(parse_tuple(entries, n, "entries")?)),
        "lr-pair" => {
            let e = array(entries, 2, "entries")?;
            Ok(InputDocument::LrPair(
                parse_tuple(&e[0], n, "entries[0]")?,
                parse_tuple(&e[1], n, "entries[1]")?,
            ))
        }
        "left-matrix" => {
            let l = dimension(&doc, "l")?;
            Ok(InputDocument::LeftMatrix(parse_left(
                entries, l, n, "entries",
            )?))
        }
        "left-pair" => {
            let l = dimension(&doc, "l")?;
            let e = array(entries, 2, "entries")?;
            Ok(InputDocument::LeftPair(
                parse_left(&e[0], l, n, "entries[0]")?,
                parse_left(&e[1], l, n, "entries[1]")?,
            ))
        }
        other => Err(bad(format!("unknown kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use semiinv::exact::frac;

    #[test]
    fn parses_every_kind() {
        let t = parse_document(r#"{"kind":"lr-tuple","n":1,"entries":[[[1,"1/2"],[0,"-3"]]]}"#)
            .unwrap();
        let InputDocument::LrTuple(t) = t else {
            panic!()
        };
        assert_eq!(t.get(0)[(0, 1)], frac(1, 2));
        let p = parse_document(
            r#"{"kind":"left-pair","l":2,"n":2,"entries":[[[1,0],[0,0]],[[0,1],[0,0]]]}"#,
        )
        .unwrap();
        assert_eq!(p.kind(), "left-pair");
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"kind":"lr-tuple","n":1,"entries":[[[1.5,0],[0,1]]]}"#,
            r#"{"kind":"lr-tuple","n":1,"entries":[[["0.5",0],[0,1]]]}"#,
            r#"{"kind":"lr-tuple","n":2,"entries":[[[1,0],[0,1]]]}"#,
            r#"{"kind":"left-matrix","l":1,"n":2,"entries":[[1,0]]}"#,
            r#"{"kind":"mystery","n":1,"entries":[]}"#,
            r#"{"kind":"lr-tuple","n":1,"entries":[[[1,"1/0"],[0,1]]]}"#,
            "not json",
        ] {
            assert!(
                matches!(parse_document(text), Err(CliError::Input(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn round_trip() {
        let text = r#"{"kind":"lr-pair","n":2,"entries":[[[[1,"2/3"],[0,4]],[[0,0],[5,"-7/2"]]],[[[1,0],[0,1]],[[2,2],[2,2]]]]}"#;
        let doc = parse_document(text).unwrap();
        let again = parse_document(&doc.to_json().to_string()).unwrap();
        assert_eq!(doc, again);
    }
}

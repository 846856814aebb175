use serde::{Deserialize, Serialize};

use super::construct::json_rational;
use super::{to_dense, to_sparse, Algebra};
use crate::arith::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Canonical on-disk form of an algebra. Fields are declared in key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub basis: Vec<String>,
    pub dim: usize,
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unity: Option<Vec<String>>,
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &Algebra) -> Self {
        let n = alg.dim();
        let vec_text = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        AlgebraDocument {
            basis: alg.labels().to_vec(),
            dim: n,
            table: (0..n)
                .map(|i| (0..n).map(|j| vec_text(&to_dense(alg.product(i, j), n))).collect())
                .collect(),
            unity: alg.unity().map(vec_text),
        }
    }
}

pub fn serialize_algebra(alg: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraDocument::from_algebra(alg)).expect("serializable")
}

/// Parse and validate an algebra document. Rationals may be `"p/q"` strings
/// or JSON integers.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| Error::parse("dim", "missing or not a non-negative integer"))? as usize;
    let basis: Vec<String> = match obj.get("basis") {
        Some(serde_json::Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(format!("basis[{i}]"), "expected a string"))
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::parse("basis", "missing or not an array")),
    };
    if basis.len() != dim {
        return Err(Error::parse("basis", format!("expected {dim} labels, found {}", basis.len())));
    }
    let vector = |v: &serde_json::Value, loc: &str| -> Result<Vec<Rational>> {
        let items = v.as_array().ok_or_else(|| Error::parse(loc, "expected an array"))?;
        if items.len() != dim {
            return Err(Error::parse(loc, format!("expected {dim} coordinates, found {}", items.len())));
        }
        items
            .iter()
            .enumerate()
            .map(|(k, x)| json_rational(x).map_err(|e| Error::parse(format!("{loc}[{k}]"), e.to_string())))
            .collect()
    };
    let rows = obj
        .get("table")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| Error::parse("table", "missing or not an array"))?;
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let loc = format!("table[{i}] (row {})", basis[i]);
        let row = rows
            .get(i)
            .ok_or_else(|| Error::parse(&loc, "missing row"))?
            .as_array()
            .ok_or_else(|| Error::parse(&loc, "expected an array"))?;
        if row.len() != dim {
            return Err(Error::parse(&loc, format!("expected {dim} entries, found {}", row.len())));
        }
        let mut out = Vec::with_capacity(dim);
        for (j, v) in row.iter().enumerate() {
            out.push(to_sparse(&vector(v, &format!("table[{i}][{j}]"))?));
        }
        table.push(out);
    }
    if rows.len() > dim {
        return Err(Error::parse("table", format!("expected {dim} rows, found {}", rows.len())));
    }
    let unity = match obj.get("unity") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(vector(v, "unity")?),
    };
    let alg = Algebra::from_sparse(basis, table, unity)?;
    if let Some(v) = alg.validate().first() {
        return Err(v.to_error());
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat, type3_example, ut};

    #[test]
    fn round_trips() {
        for alg in [mat(2).unwrap(), ut(3).unwrap(), type3_example()] {
            assert_eq!(parse_algebra(&serialize_algebra(&alg)).unwrap(), alg);
        }
    }

    #[test]
    fn missing_row_is_named() {
        let mut doc = AlgebraDocument::from_algebra(&mat(2).unwrap());
        doc.table.pop();
        let err = parse_algebra(&serde_json::to_string(&doc).unwrap()).unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.contains("table[3]") && location.contains("E_{2,2}")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_associative_table() {
        // e1 e1 = e2, e1 e2 = e1: (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1.
        let text = r#"{"dim": 2, "basis": ["e1", "e2"],
            "table": [[["0","1"], ["1","0"]], [["0","0"], ["0","0"]]]}"#;
        assert_eq!(parse_algebra(text).unwrap_err(), Error::AssociativityViolation(0, 0, 0));
    }

    #[test]
    fn integers_accepted() {
        let text = r#"{"dim": 1, "basis": ["e"], "table": [[[1]]], "unity": [1]}"#;
        assert_eq!(parse_algebra(text).unwrap(), mat(1).unwrap().relabeled(vec!["e".into()]).unwrap());
    }
}

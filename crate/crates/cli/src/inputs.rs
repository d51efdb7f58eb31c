//! Matrix and vector ingestion: JSON or whitespace text, exact rationals
//! throughout. Decimal literals convert by their digits, never through a
//! binary float.

use conefaces::ratmath::{parse_rational, RatMatrix, Rational};
use conefaces::{Error, Result};

/// Parses a matrix from JSON ({"n": int, "entries": [["p/q", ...], ...]})
/// or whitespace text (one row per line). Dimensions must be square.
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        parse_matrix_json(trimmed)
    } else {
        parse_matrix_text(text)
    }
}

fn parse_matrix_json(text: &str) -> Result<RatMatrix> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    let n = value
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Parse("matrix JSON needs an integer field \"n\"".into()))?
        as usize;
    let rows = value
        .get("entries")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("matrix JSON needs an \"entries\" array".into()))?;
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {} rows, found {}",
            n,
            rows.len()
        )));
    }
    let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {} is not an array", i + 1)))?;
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                cells.len(),
                n
            )));
        }
        let mut out = Vec::with_capacity(n);
        for (j, cell) in cells.iter().enumerate() {
            let s = match cell {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(x) => x.to_string(),
                _ => {
                    return Err(Error::Parse(format!(
                        "entry ({},{}) must be a string or number",
                        i + 1,
                        j + 1
                    )))
                }
            };
            out.push(
                parse_rational(&s)
                    .map_err(|e| Error::Parse(format!("entry ({},{}): {e}", i + 1, j + 1)))?,
            );
        }
        entries.push(out);
    }
    Ok(RatMatrix::from_rows(entries))
}

fn parse_matrix_text(text: &str) -> Result<RatMatrix> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (j, token) in line.split_whitespace().enumerate() {
            row.push(
                parse_rational(token)
                    .map_err(|e| Error::Parse(format!("entry ({},{}): {e}", i + 1, j + 1)))?,
            );
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no matrix rows found".into()));
    }
    let n = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
    }
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "matrix is {}x{}, expected square",
            rows.len(),
            n
        )));
    }
    Ok(RatMatrix::from_rows(rows))
}

/// Comma-separated rational vector, e.g. "1,1/2,0.25".
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<Result<Vec<_>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(Error::Parse("empty vector".into()))
            } else {
                Ok(v)
            }
        })
}

/// Comma-separated 1-based index set, e.g. "2,3,4"; "0" or "" denote the
/// empty set.
pub fn parse_index_set(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in trimmed.split(',') {
        let idx: usize = token
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {token:?}")))?;
        if idx == 0 {
            return Err(Error::Parse("indices are 1-based".into()));
        }
        out.push(idx - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

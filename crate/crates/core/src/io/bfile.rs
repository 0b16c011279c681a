//! OEIS b-file text: `<index> <value>` per line, `#` comments.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::BigRat;
use crate::logbehavior::{CheckOutcome, Relation, Violation};
use crate::sequences::SequenceDef;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFileError {
    #[error("malformed b-file line {0}")]
    MalformedLine(usize),
    #[error("b-file index does not increase at line {0}")]
    NonMonotoneIndex(usize),
    #[error("sequence and b-file index ranges do not overlap")]
    NoOverlap,
    #[error("term generation failed: {0}")]
    Sequence(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFile {
    /// Taken from a leading `# Annnnnn` comment when present.
    pub oeis_id: Option<String>,
    pub entries: Vec<(i64, BigInt)>,
}

fn header_id(comment: &str) -> Option<String> {
    let word = comment.trim_start_matches('#').split_whitespace().next()?;
    let digits = word.strip_prefix('A')?;
    (digits.len() == 6 && digits.bytes().all(|c| c.is_ascii_digit())).then(|| word.to_string())
}

fn parse_line(line: &str) -> Option<(i64, BigInt)> {
    let mut parts = line.split_whitespace();
    let index = parts.next()?.parse().ok()?;
    let value = parts.next()?;
    // BigInt accepts a leading '+', which would not round-trip.
    if value.starts_with('+') || parts.next().is_some() {
        return None;
    }
    Some((index, value.parse().ok()?))
}

/// Parses b-file text. Total on arbitrary bytes: anything unexpected is a
/// located error.
pub fn parse_bfile(bytes: &[u8]) -> Result<BFile, BFileError> {
    let mut oeis_id = None;
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = i + 1;
        let line = std::str::from_utf8(raw).map_err(|_| BFileError::MalformedLine(line_no))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if oeis_id.is_none() && entries.is_empty() {
                oeis_id = header_id(line);
            }
            continue;
        }
        let (index, value) = parse_line(line).ok_or(BFileError::MalformedLine(line_no))?;
        if entries.last().is_some_and(|(prev, _)| *prev >= index) {
            return Err(BFileError::NonMonotoneIndex(line_no));
        }
        entries.push((index, value));
    }
    Ok(BFile { oeis_id, entries })
}

/// Compares generated terms with the b-file on every overlapping index.
///
/// b-file index `m` corresponds to sequence index `m - oeis_index_shift`.
/// Violation indices are b-file indices; `lhs` is the generated value.
pub fn cross_validate(def: &SequenceDef, bfile: &BFile) -> Result<CheckOutcome, BFileError> {
    let shift = def.oeis_index_shift;
    let wanted: Vec<(i64, &BigInt)> = bfile
        .entries
        .iter()
        .map(|(m, v)| (m - shift, v))
        .filter(|(n, _)| *n >= def.offset())
        .collect();
    let (Some(first), Some(last)) = (wanted.first(), wanted.last()) else {
        return Err(BFileError::NoOverlap);
    };
    let terms = def
        .terms_through(last.0 + 1)
        .map_err(|e| BFileError::Sequence(e.to_string()))?;
    let mut first_violation = None;
    let mut equalities = 0;
    for (n, v) in &wanted {
        let expected = BigRat::from_integer((*v).clone());
        let got = terms.get(*n).expect("generated through the last index");
        if *got == expected {
            equalities += 1;
        } else if first_violation.is_none() {
            first_violation = Some(Violation { index: n + shift, lhs: got.clone(), rhs: expected });
        }
    }
    Ok(CheckOutcome {
        holds: first_violation.is_none(),
        strict: false,
        relation: Relation::Eq,
        first_violation,
        checked_range: (first.0 + shift, last.0 + shift),
        equalities,
    })
}

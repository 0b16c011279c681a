//! Sequence definitions and exact term generation.

mod catalog;
mod generate;

pub use catalog::{catalog_lookup, catalog_names, fuss_catalan};
pub use generate::{generate_terms, ratio_terms, Terms};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{BigRat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("recurrence coefficient {which} has a pole at n = {index}")]
    CoefficientPole { which: &'static str, index: i64 },
    #[error("term z_{index} is zero")]
    ZeroTerm { index: i64 },
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("invalid sequence definition: {0}")]
    InvalidDefinition(String),
    #[error("explicit sequence has {available} terms, {requested} requested")]
    NotEnoughTerms { available: usize, requested: usize },
    #[error("term z_{index} = {value} is not an integer")]
    NonIntegralTerm { index: i64, value: BigRat },
}

/// Three-term recurrence `z_{n+1} = a(n) z_n + b(n) z_{n-1}`.
///
/// `initial_terms[0]` is `z_offset`. The recurrence produces every term after
/// the supplied ones, so it is applied at indices `n >= offset + len - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceDef {
    pub a: RatFunc,
    pub b: RatFunc,
    pub initial_terms: Vec<BigRat>,
    pub offset: i64,
}

impl RecurrenceDef {
    pub fn new(a: RatFunc, b: RatFunc, initial_terms: Vec<BigRat>, offset: i64) -> Result<Self, SequenceError> {
        if initial_terms.len() < 2 {
            return Err(SequenceError::InvalidDefinition(
                "a recurrence needs at least two initial terms".into(),
            ));
        }
        Ok(RecurrenceDef { a, b, initial_terms, offset })
    }

    /// First index at which `z_{n+1}` is computed from the recurrence.
    pub fn first_step(&self) -> i64 {
        self.offset + self.initial_terms.len() as i64 - 1
    }
}

/// `C_i = (n0 + i a)! / ((k0 + i b)! (k0bar + i bbar)!)` for `i >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaQuotientDef {
    pub n0: u64,
    pub k0: u64,
    pub k0bar: u64,
    pub a: u64,
    pub b: u64,
    pub bbar: u64,
}

impl GammaQuotientDef {
    pub fn new(n0: u64, k0: u64, k0bar: u64, a: u64, b: u64, bbar: u64) -> Result<Self, SequenceError> {
        if a == 0 || b == 0 || bbar == 0 {
            return Err(SequenceError::InvalidDefinition(
                "a, b and bbar must be positive".into(),
            ));
        }
        Ok(GammaQuotientDef { n0, k0, k0bar, a, b, bbar })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Recurrence(RecurrenceDef),
    GammaQuotient(GammaQuotientDef),
    Explicit { terms: Vec<BigRat> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDef {
    pub name: String,
    pub kind: SequenceKind,
    pub oeis_id: Option<String>,
    /// b-file index minus sequence index (Fine's numbers are shifted by one in OEIS).
    pub oeis_index_shift: i64,
    /// Assert that every generated term is an integer.
    pub integral: bool,
}

impl SequenceDef {
    pub fn new(name: impl Into<String>, kind: SequenceKind) -> Result<Self, SequenceError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(SequenceError::InvalidDefinition("empty name".into()));
        }
        if let SequenceKind::Explicit { terms } = &kind {
            if terms.len() < 5 {
                return Err(SequenceError::InvalidDefinition(
                    "explicit sequences need at least five terms".into(),
                ));
            }
        }
        Ok(SequenceDef { name, kind, oeis_id: None, oeis_index_shift: 0, integral: false })
    }

    pub fn with_oeis(mut self, id: &str, shift: i64) -> Self {
        self.oeis_id = Some(id.to_string());
        self.oeis_index_shift = shift;
        self
    }

    pub fn integral(mut self) -> Self {
        self.integral = true;
        self
    }

    /// Index of the first term.
    pub fn offset(&self) -> i64 {
        match &self.kind {
            SequenceKind::Recurrence(r) => r.offset,
            SequenceKind::GammaQuotient(_) | SequenceKind::Explicit { .. } => 0,
        }
    }

    pub fn recurrence(&self) -> Option<&RecurrenceDef> {
        match &self.kind {
            SequenceKind::Recurrence(r) => Some(r),
            _ => None,
        }
    }
}

//! Exact finite-prefix checks of log-convexity, log-concavity, ratio
//! log-convexity/concavity and log-monotonicity of order `k`.
//!
//! Every comparison is homogeneous (both sides have the same degree in the
//! terms), so each window of rationals is scaled to integers by the lcm of
//! its denominators and compared by cross-multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rat_serde, BigRat};
use crate::sequences::{SequenceDef, SequenceError, Terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogBehaviorError {
    #[error("need at least {needed} terms, got {available}")]
    TooFewTerms { needed: usize, available: usize },
    #[error("term with index {index} is {value}, not positive")]
    NonPositiveTerm { index: i64, value: BigRat },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Direction of the required inequality `lhs ? rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Geq,
    Leq,
    /// Exact agreement; `strict` has no effect.
    Eq,
}

impl Relation {
    pub fn symbol(self, strict: bool) -> &'static str {
        match (self, strict) {
            (Relation::Geq, false) => ">=",
            (Relation::Geq, true) => ">",
            (Relation::Leq, false) => "<=",
            (Relation::Leq, true) => "<",
            (Relation::Eq, _) => "=",
        }
    }

    fn satisfied<T: Ord>(self, lhs: &T, rhs: &T, strict: bool) -> bool {
        match (self, strict) {
            (Relation::Geq, false) => lhs >= rhs,
            (Relation::Geq, true) => lhs > rhs,
            (Relation::Leq, false) => lhs <= rhs,
            (Relation::Leq, true) => lhs < rhs,
            (Relation::Eq, _) => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: i64,
    #[serde(with = "rat_serde")]
    pub lhs: BigRat,
    #[serde(with = "rat_serde")]
    pub rhs: BigRat,
}

/// Result of checking one inequality at every admissible index of a window.
///
/// `checked_range` is the inclusive range of indices (centers) examined and
/// `equalities` counts the indices where both sides were equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub holds: bool,
    pub strict: bool,
    pub relation: Relation,
    pub first_violation: Option<Violation>,
    pub checked_range: (i64, i64),
    pub equalities: usize,
}

fn require_positive(terms: &Terms) -> Result<(), LogBehaviorError> {
    for (i, v) in terms.values.iter().enumerate() {
        if !v.is_positive() {
            return Err(LogBehaviorError::NonPositiveTerm {
                index: terms.start + i as i64,
                value: v.clone(),
            });
        }
    }
    Ok(())
}

fn require_len(terms: &Terms, needed: usize) -> Result<(), LogBehaviorError> {
    if terms.len() < needed {
        return Err(LogBehaviorError::TooFewTerms { needed, available: terms.len() });
    }
    Ok(())
}

/// Scales a short window to integers; the common factor is positive.
fn integer_image(values: &[BigRat]) -> Vec<BigInt> {
    let l = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    values.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

/// One inequality shape: `lhs(window) ? rhs(window)` where the window is the
/// slice `z_{c-before} ..= z_{c+after}` around center `c`.
struct Shape {
    before: usize,
    after: usize,
    relation: Relation,
    sides: fn(&[BigInt]) -> (BigInt, BigInt),
    exact_sides: fn(&[BigRat]) -> (BigRat, BigRat),
}

/// Evaluates the shape at every center; returns the outcome and the list of
/// violating centers (all of them, in order).
fn scan(
    terms: &Terms,
    shape: &Shape,
    strict: bool,
) -> Result<(CheckOutcome, Vec<i64>), LogBehaviorError> {
    let width = shape.before + shape.after + 1;
    require_len(terms, width)?;
    require_positive(terms)?;
    // Integer terms are compared directly; otherwise each window is scaled
    // separately, since one lcm across many unrelated denominators blows up.
    let integral = terms.values.iter().all(|v| v.is_integer());
    let ints: Vec<BigInt> = if integral {
        terms.values.iter().map(|v| v.numer().clone()).collect()
    } else {
        Vec::new()
    };
    let mut violations = Vec::new();
    let mut first_violation = None;
    let mut equalities = 0;
    for i in 0..=terms.len() - width {
        let (lhs, rhs) = if integral {
            (shape.sides)(&ints[i..i + width])
        } else {
            (shape.sides)(&integer_image(&terms.values[i..i + width]))
        };
        if lhs == rhs {
            equalities += 1;
        }
        if !shape.relation.satisfied(&lhs, &rhs, strict) {
            let center = terms.start + (i + shape.before) as i64;
            if first_violation.is_none() {
                let (lhs, rhs) = (shape.exact_sides)(&terms.values[i..i + width]);
                first_violation = Some(Violation { index: center, lhs, rhs });
            }
            violations.push(center);
        }
    }
    let lo = terms.start + shape.before as i64;
    let hi = terms.end() - 1 - shape.after as i64;
    let outcome = CheckOutcome {
        holds: first_violation.is_none(),
        strict,
        relation: shape.relation,
        first_violation,
        checked_range: (lo, hi),
        equalities,
    };
    Ok((outcome, violations))
}

fn log_shape(relation: Relation) -> Shape {
    Shape {
        before: 1,
        after: 1,
        relation,
        sides: |w| (&w[0] * &w[2], &w[1] * &w[1]),
        exact_sides: |w| (&w[0] * &w[2], &w[1] * &w[1]),
    }
}

fn pow<T>(x: &T, e: u32) -> T
where
    T: Clone + One,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut r = T::one();
    for _ in 0..e {
        r = &r * x;
    }
    r
}

fn ratio_convex_shape() -> Shape {
    // z_{n+2} z_{n-2} z_n^6  vs  z_{n+1}^4 z_{n-1}^4
    Shape {
        before: 2,
        after: 2,
        relation: Relation::Geq,
        sides: |w| (&w[4] * &w[0] * pow(&w[2], 6), pow(&(&w[3] * &w[1]), 4)),
        exact_sides: |w| (&w[4] * &w[0] * pow(&w[2], 6), pow(&(&w[3] * &w[1]), 4)),
    }
}

fn ratio_concave_shape() -> Shape {
    // z_{n+1}^3 z_{n-1}  vs  z_n^3 z_{n+2}
    Shape {
        before: 1,
        after: 2,
        relation: Relation::Geq,
        sides: |w| (pow(&w[2], 3) * &w[0], pow(&w[1], 3) * &w[3]),
        exact_sides: |w| (pow(&w[2], 3) * &w[0], pow(&w[1], 3) * &w[3]),
    }
}

/// The ratio sequence `x_n = z_{n+1} / z_n`, indexed from the same start.
pub fn apply_r(terms: &Terms) -> Result<Terms, LogBehaviorError> {
    require_positive(terms)?;
    let values = terms.values.windows(2).map(|w| &w[1] / &w[0]).collect();
    Ok(Terms::new(terms.start, values))
}

/// `z_{n-1} z_{n+1} >= z_n^2` at every interior index.
pub fn check_log_convex(terms: &Terms, strict: bool) -> Result<CheckOutcome, LogBehaviorError> {
    Ok(scan(terms, &log_shape(Relation::Geq), strict)?.0)
}

/// `z_{n-1} z_{n+1} <= z_n^2` at every interior index.
pub fn check_log_concave(terms: &Terms, strict: bool) -> Result<CheckOutcome, LogBehaviorError> {
    Ok(scan(terms, &log_shape(Relation::Leq), strict)?.0)
}

/// Log-convexity of `{x_{n+1}/x_n}` in product form, at every center `n`
/// with `z_{n-2} ..= z_{n+2}` inside the window.
pub fn check_ratio_log_convex(terms: &Terms, strict: bool) -> Result<CheckOutcome, LogBehaviorError> {
    Ok(scan(terms, &ratio_convex_shape(), strict)?.0)
}

/// Log-concavity of `{z_{n+1}/z_n}` in product form, `z_{n+1}^3 z_{n-1} >=
/// z_n^3 z_{n+2}`, reported at the center `n` of the ratio sequence.
pub fn check_ratio_log_concave(terms: &Terms, strict: bool) -> Result<CheckOutcome, LogBehaviorError> {
    Ok(scan(terms, &ratio_concave_shape(), strict)?.0)
}

fn level_shape(r: usize) -> Shape {
    log_shape(if r.is_multiple_of(2) { Relation::Geq } else { Relation::Leq })
}

/// Materializes `R^0 z, ..., R^{k-1} z`.
fn levels(terms: &Terms, k: usize) -> Result<Vec<Terms>, LogBehaviorError> {
    let mut out = vec![terms.clone()];
    for _ in 1..k {
        let next = apply_r(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// One outcome per level `r = 0..k`: level `r` must be log-convex for even `r`
/// and log-concave for odd `r`. Order `k` holds iff every outcome holds.
pub fn log_monotonic_order(terms: &Terms, k: usize, strict: bool) -> Result<Vec<CheckOutcome>, LogBehaviorError> {
    require_len(terms, k + 2)?;
    levels(terms, k)?
        .iter()
        .enumerate()
        .map(|(r, level)| Ok(scan(level, &level_shape(r), strict)?.0))
        .collect()
}

pub fn all_hold(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.holds)
}

/// Smallest `N` such that the order-`k` conditions hold on `z_N ..= z_horizon`.
///
/// The answer is window-relative: violations past `horizon` are invisible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Onset {
    pub k: usize,
    pub horizon: i64,
    pub onset: Option<i64>,
    pub window_relative: bool,
}

/// Forward scan for the order-`k` onset; the window `[N, horizon]` must keep at
/// least `k + 2` terms.
pub fn order_onset(def: &SequenceDef, k: usize, horizon: i64) -> Result<Onset, LogBehaviorError> {
    let terms = def.terms_through(horizon + 1)?;
    Ok(Onset { k, horizon, onset: onset_in(&terms, k), window_relative: true })
}

/// Onset within an already generated window (the window's end is the horizon).
pub fn onset_in(terms: &Terms, k: usize) -> Option<i64> {
    let k = k.max(1);
    let last = terms.end() - 1;
    let latest_start = last - (k as i64 + 1);
    // The window must avoid every nonpositive term.
    let base = terms
        .values
        .iter()
        .rposition(|v| !v.is_positive())
        .map_or(terms.start, |i| terms.start + i as i64 + 1);
    if base > latest_start {
        return None;
    }
    let window = terms.from_index(base);
    let levels = levels(&window, k).ok()?;
    let mut onset = base;
    for (r, level) in levels.iter().enumerate() {
        if level.len() < 3 {
            continue;
        }
        let (_, violations) = scan(level, &level_shape(r), false).ok()?;
        // A level-r center c reads z_{c-1} onward, so it drops out once N >= c.
        if let Some(&c) = violations.last() {
            onset = onset.max(c);
        }
    }
    (onset <= latest_start).then_some(onset)
}

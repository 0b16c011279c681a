//! Gamma-quotient families `C_i = (n0 + ia)! / ((k0 + ib)! (k0bar + i bbar)!)`:
//! eligibility for infinite log-monotonicity, finite-order slices of the
//! conclusion, derangement experiments and the kernel `h(t,u)`.

mod hkernel;

pub use hkernel::{
    h_kernel_eval, h_kernel_grid_check, h_kernel_symmetry_gap, HKernelParams, HKernelReport, HPoint,
    HValue, DEFAULT_DIGITS,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rat_serde, BigRat};
use crate::logbehavior::{log_monotonic_order, order_onset, CheckOutcome, LogBehaviorError, Relation, Violation};
use crate::sequences::{catalog_lookup, GammaQuotientDef, SequenceDef, SequenceError, SequenceKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GammaError {
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("h({t}, {u}) could not be resolved: enclosure width {width:e} after retries")]
    PrecisionLoss { t: String, u: String, width: f64 },
    #[error(transparent)]
    LogBehavior(#[from] LogBehaviorError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityResult {
    pub eligible: bool,
    /// `k0 - (n0 + 1) b / a`.
    #[serde(with = "rat_serde")]
    pub u: BigRat,
    /// `a / b`.
    #[serde(with = "rat_serde")]
    pub p: BigRat,
    /// `a / bbar`.
    #[serde(with = "rat_serde")]
    pub q: BigRat,
    pub failed_condition: Option<String>,
    pub conditions: Vec<Condition>,
}

fn fr(n: u64) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Checks `a >= b + bbar`, `-1 <= u <= 0` and `a (k0 + k0bar + 1) >= (n0 + 1)(b + bbar)`.
///
/// The third condition is needed for the conclusion: without it, e.g.
/// `(3, 2, 0, 2, 1, 1)` gives `3, 20, 105, ...`, which is not log-convex. It
/// holds with equality for binomial families.
pub fn check_gamma_eligibility(fam: &GammaQuotientDef) -> EligibilityResult {
    let GammaQuotientDef { n0, k0, k0bar, a, b, bbar } = *fam;
    let u = fr(k0) - fr(n0 + 1) * fr(b) / fr(a);
    let p = fr(a) / fr(b);
    let q = fr(a) / fr(bbar);
    let conditions = vec![
        Condition { name: "a >= b + bbar".into(), holds: a >= b + bbar },
        Condition {
            name: "-1 <= k0 - (n0 + 1) b / a <= 0".into(),
            holds: u >= -BigRat::one() && !u.is_positive(),
        },
        Condition {
            name: "a (k0 + k0bar + 1) >= (n0 + 1)(b + bbar)".into(),
            holds: a * (k0 + k0bar + 1) >= (n0 + 1) * (b + bbar),
        },
    ];
    let failed_condition = conditions.iter().find(|c| !c.holds).map(|c| c.name.clone());
    EligibilityResult { eligible: failed_condition.is_none(), u, p, q, failed_condition, conditions }
}

/// `C_i = binom(n0 + i delta_big, k0 + i delta)`, mapped to
/// `(n0, k0, n0 - k0, delta_big, delta, delta_big - delta)`.
pub fn binomial_family(n0: u64, k0: u64, delta_big: u64, delta: u64) -> Result<GammaQuotientDef, GammaError> {
    if k0 > n0 {
        return Err(GammaError::InvalidFamily(format!("k0 = {k0} exceeds n0 = {n0}")));
    }
    if delta == 0 || delta_big <= delta {
        return Err(GammaError::InvalidFamily(format!(
            "need Delta > delta > 0, got Delta = {delta_big}, delta = {delta}"
        )));
    }
    Ok(GammaQuotientDef::new(n0, k0, n0 - k0, delta_big, delta, delta_big - delta)?)
}

pub fn check_binomial_family(n0: u64, k0: u64, delta_big: u64, delta: u64) -> Result<EligibilityResult, GammaError> {
    Ok(check_gamma_eligibility(&binomial_family(n0, k0, delta_big, delta)?))
}

/// Runs the order-`k` log-monotonicity check on the first `count` terms.
pub fn verify_finite_log_monotonicity(fam: &GammaQuotientDef, k: usize, count: usize) -> Result<Vec<CheckOutcome>, GammaError> {
    if count < k + 3 {
        return Err(GammaError::InvalidParameters(format!("count = {count} must be at least k + 3 = {}", k + 3)));
    }
    let def = SequenceDef::new("gamma-quotient", SequenceKind::GammaQuotient(*fam))?;
    let terms = def.terms(count)?;
    Ok(log_monotonic_order(&terms, k, false)?)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Enclosure `[lo, hi]` of `n!/e` from `n! sum_{j<=m} (-1)^j / j!` with the
/// alternating-series remainder `n!/(m+1)!`.
pub fn factorial_over_e(n: u64, m: u64) -> (BigRat, BigRat) {
    let nf = BigRat::from_integer(factorial(n));
    let mut sum = BigRat::zero();
    let mut term = BigRat::one();
    for j in 0..=m {
        if j > 0 {
            term = -term / fr(j);
        }
        sum += &term;
    }
    let centre = &nf * sum;
    let radius = nf / BigRat::from_integer(factorial(m + 1));
    (&centre - &radius, centre + radius)
}

/// `|d_n - n!/e| <= 1/2` for `from <= n <= n_max`, by exact enclosures.
pub fn derangement_e_bound_range(from: i64, n_max: i64) -> Result<CheckOutcome, GammaError> {
    if from < 0 || n_max < from {
        return Err(GammaError::InvalidParameters(format!("empty range [{from}, {n_max}]")));
    }
    let d = catalog_lookup("derangement")?.terms_through(n_max + 1)?;
    let half = BigRat::new(1.into(), 2.into());
    let mut first_violation = None;
    let mut equalities = 0;
    for n in from..=n_max {
        let (lo, hi) = factorial_over_e(n as u64, n as u64 + 20);
        let dn = d.get(n).expect("generated");
        let dist = (dn - lo).abs().max((dn - hi).abs());
        if dist == half {
            equalities += 1;
        }
        if dist > half && first_violation.is_none() {
            first_violation = Some(Violation { index: n, lhs: dist, rhs: half.clone() });
        }
    }
    Ok(CheckOutcome {
        holds: first_violation.is_none(),
        strict: false,
        relation: Relation::Leq,
        first_violation,
        checked_range: (from, n_max),
        equalities,
    })
}

pub fn derangement_e_bound(n_max: i64) -> Result<CheckOutcome, GammaError> {
    if n_max < 3 {
        return Err(GammaError::InvalidParameters("n_max must be at least 3".into()));
    }
    derangement_e_bound_range(3, n_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnsetRow {
    pub k: usize,
    /// Smallest `N` with order `k` holding on `[N, horizon]`.
    pub onset: Option<i64>,
    /// Analytic sufficiency bound from the literature (k = 2: 4, k = 3: 8).
    pub analytic_bound: Option<i64>,
    pub within_bound: Option<bool>,
    /// Whether the order-`k` conditions hold on the window anchored at 3.
    pub holds_from_3: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnsetTable {
    pub horizon: i64,
    pub rows: Vec<OnsetRow>,
    pub window_relative: bool,
}

/// Empirical order-`k` onsets for derangements, `k = 1..=k_max`.
pub fn derangement_onset_table(k_max: usize, horizon: i64) -> Result<OnsetTable, GammaError> {
    if horizon < k_max as i64 + 5 {
        return Err(GammaError::InvalidParameters(format!("horizon must be at least k_max + 5 = {}", k_max + 5)));
    }
    let def = catalog_lookup("derangement")?;
    let rows = (1..=k_max)
        .map(|k| {
            let onset = order_onset(&def, k, horizon)?.onset;
            let analytic_bound = match k {
                2 => Some(4),
                3 => Some(8),
                _ => None,
            };
            Ok(OnsetRow {
                k,
                onset,
                analytic_bound,
                within_bound: analytic_bound.map(|b| onset.is_some_and(|o| o <= b)),
                holds_from_3: onset.map(|o| o <= 3),
            })
        })
        .collect::<Result<Vec<_>, GammaError>>()?;
    Ok(OnsetTable { horizon, rows, window_relative: true })
}

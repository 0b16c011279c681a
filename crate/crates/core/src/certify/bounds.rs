//! Validity of ratio bounds `g_n <= z_n / z_{n-1}` and `z_n / z_{n-1} < h_n`.
//!
//! For `b > 0` the lower bound uses the sandwich
//! `g_n < z_n/z_{n-1} < b_n / (g_{n+1} - a_n)`, whose induction step is
//! `a_n + b_n/g_n < b_{n+1} / (g_{n+2} - a_{n+1})`. For `b < 0` the ratio map
//! `rho -> a_n + b_n/rho` is increasing, so `a_n + b_n/g_n >= g_{n+1}` suffices
//! for a lower bound and `h_{n+1} > a_n + b_n/h_n` for an upper bound.

// Errors carry the offending exact values; they are rare and not on a hot path.
#![allow(clippy::result_large_err)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    prove_nonnegative_on_integers, prove_positive_on_integers, BigRat, PositivityStatus,
    PositivityVerdict, RatFunc,
};
use crate::logbehavior::{CheckOutcome, Relation, Violation};
use crate::sequences::{RecurrenceDef, SequenceDef, SequenceError, SequenceKind, Terms};

/// `checked_range.1` for statements proven for every `n >= checked_range.0`.
pub const UNBOUNDED: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("base case fails at n = {index}: ratio {ratio} is not strictly inside ({lower}, {upper})")]
    BoundNotBracketing { index: i64, ratio: BigRat, lower: BigRat, upper: BigRat },
    #[error("cannot prove g(n+1) - a(n) > 0 for n >= {from} (fails at n = {witness})")]
    DenominatorSignAmbiguous { from: i64, witness: BigInt },
    #[error("base case fails at n = {index}: ratio {ratio} vs bound {bound}")]
    BaseFails { index: i64, ratio: BigRat, bound: BigRat },
    #[error("symbolic step is inconclusive: {0}")]
    SymbolicInconclusive(String),
    #[error("sign precondition on b(n) fails: {0}")]
    SignPrecondition(String),
    #[error("ratio at n = {index} is undefined (zero previous term)")]
    ZeroTerm { index: i64 },
    #[error("interval propagation reached a nonpositive lower end at n = {index}")]
    IntervalDegenerate { index: i64 },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum BoundMode {
    Symbolic,
    /// Exact interval propagation up to `horizon`; evidence, not a proof.
    Interval { horizon: i64 },
}

/// A named positivity proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedProof {
    pub name: String,
    pub from: i64,
    pub verdict: PositivityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub outcome: CheckOutcome,
    pub proofs: Vec<NamedProof>,
    pub notes: Vec<String>,
}

fn sign_proof(r: &RatFunc, n0: i64, strict: bool) -> PositivityVerdict {
    let start = BigInt::from(n0);
    let den_sq = r.den() * r.den();
    let den = prove_positive_on_integers(&den_sq, &start).expect("denominator is nonzero");
    if !den.holds() {
        let w = den.witness.clone().expect("witness");
        return PositivityVerdict {
            status: PositivityStatus::NotPositive,
            witness: Some(w.clone()),
            transcript: vec![format!("denominator {} vanishes at n = {w}", r.den())],
        };
    }
    if r.is_zero() {
        return if strict {
            PositivityVerdict {
                status: PositivityStatus::NotPositive,
                witness: Some(start),
                transcript: vec!["function is identically zero".into()],
            }
        } else {
            prove_nonnegative_on_integers(r.num(), &start)
        };
    }
    let p = r.sign_polynomial();
    let mut v = if strict {
        prove_positive_on_integers(&p, &start).expect("nonzero")
    } else {
        prove_nonnegative_on_integers(&p, &start)
    };
    if !r.is_polynomial() {
        v.transcript.insert(0, format!("sign of {r} equals the sign of num * den"));
    }
    v
}

/// Proves `r(n) > 0` for all integers `n >= n0`, rejecting poles.
pub fn prove_ratfunc_positive(r: &RatFunc, n0: i64) -> PositivityVerdict {
    sign_proof(r, n0, true)
}

/// Proves `r(n) >= 0` for all integers `n >= n0`, rejecting poles.
pub fn prove_ratfunc_nonnegative(r: &RatFunc, n0: i64) -> PositivityVerdict {
    sign_proof(r, n0, false)
}

fn named(name: &str, from: i64, verdict: PositivityVerdict) -> NamedProof {
    NamedProof { name: name.into(), from, verdict }
}

fn as_sequence(rec: &RecurrenceDef) -> SequenceDef {
    SequenceDef::new("recurrence", SequenceKind::Recurrence(rec.clone())).expect("valid name")
}

/// `z_n / z_{n-1}` for `n` in `from..=to`.
pub fn exact_ratios(rec: &RecurrenceDef, from: i64, to: i64) -> Result<Vec<(i64, BigRat)>, BoundError> {
    let terms = as_sequence(rec).terms_through(to + 1)?;
    ratios_from_terms(&terms, from, to)
}

pub(crate) fn ratios_from_terms(terms: &Terms, from: i64, to: i64) -> Result<Vec<(i64, BigRat)>, BoundError> {
    (from..=to)
        .map(|n| {
            let (Some(prev), Some(cur)) = (terms.get(n - 1), terms.get(n)) else {
                return Err(BoundError::SymbolicInconclusive(format!("no term at index {n}")));
            };
            if prev.is_zero() {
                return Err(BoundError::ZeroTerm { index: n });
            }
            Ok((n, cur / prev))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BSign {
    Positive,
    Negative,
}

fn b_sign(rec: &RecurrenceDef, n0: i64) -> Result<(BSign, NamedProof), BoundError> {
    let pos = prove_ratfunc_positive(&rec.b, n0);
    if pos.holds() {
        return Ok((BSign::Positive, named("b(n) > 0", n0, pos)));
    }
    let neg = prove_ratfunc_positive(&-&rec.b, n0);
    if neg.holds() {
        return Ok((BSign::Negative, named("b(n) < 0", n0, neg)));
    }
    Err(BoundError::SignPrecondition(format!(
        "b(n) = {} changes sign for n >= {n0}",
        rec.b
    )))
}

fn eval(r: &RatFunc, n: i64) -> Result<BigRat, BoundError> {
    r.eval_int(n)
        .map_err(|_| BoundError::SymbolicInconclusive(format!("{r} has a pole at n = {n}")))
}

fn symbolic_outcome(n0: i64, holds: bool, strict: bool, relation: Relation, violation: Option<Violation>) -> CheckOutcome {
    CheckOutcome {
        holds,
        strict,
        relation,
        first_violation: violation,
        checked_range: (n0, UNBOUNDED),
        equalities: 0,
    }
}

/// Evaluates `lhs(n)` and `rhs(n)` at a witness index for reporting.
fn witness_violation(w: &Option<BigInt>, lhs: &RatFunc, rhs: &RatFunc) -> Option<Violation> {
    let n: i64 = w.as_ref()?.try_into().ok()?;
    Some(Violation { index: n, lhs: lhs.eval_int(n).ok()?, rhs: rhs.eval_int(n).ok()? })
}

/// Checks `g_n <= z_n / z_{n-1}` for all `n >= n0`.
pub fn verify_ratio_lower_bound(
    rec: &RecurrenceDef,
    g: &RatFunc,
    n0: i64,
    mode: BoundMode,
) -> Result<BoundCheck, BoundError> {
    let (sign, sign_proof) = b_sign(rec, n0)?;
    match mode {
        BoundMode::Interval { horizon } => lower_bound_by_intervals(rec, g, n0, horizon, sign_proof),
        BoundMode::Symbolic => match sign {
            BSign::Positive => lower_bound_sandwich(rec, g, n0, sign_proof),
            BSign::Negative => lower_bound_monotone(rec, g, n0, sign_proof),
        },
    }
}

fn lower_bound_sandwich(
    rec: &RecurrenceDef,
    g: &RatFunc,
    n0: i64,
    sign_proof: NamedProof,
) -> Result<BoundCheck, BoundError> {
    let (a, b) = (&rec.a, &rec.b);
    let mut proofs = vec![sign_proof];
    let mut notes = Vec::new();

    let gap = &g.shift(1) - a;
    let gap_proof = prove_ratfunc_positive(&gap, n0);
    if !gap_proof.holds() {
        return Err(BoundError::DenominatorSignAmbiguous {
            from: n0,
            witness: gap_proof.witness.unwrap_or_default(),
        });
    }
    proofs.push(named("g(n+1) - a(n) > 0", n0, gap_proof));
    let g_pos = prove_ratfunc_positive(g, n0);
    let g_ok = g_pos.holds();
    proofs.push(named("g(n) > 0", n0, g_pos));
    if !g_ok {
        return Err(BoundError::SymbolicInconclusive("g(n) is not positive".into()));
    }

    let (_, rho) = exact_ratios(rec, n0, n0)?.remove(0);
    let lower = eval(g, n0)?;
    let upper = eval(b, n0)? / eval(&gap, n0)?;
    if !(lower < rho && rho < upper) {
        return Err(BoundError::BoundNotBracketing { index: n0, ratio: rho, lower, upper });
    }
    notes.push(format!("base: {lower} < z_{n0}/z_{} = {rho} < {upper}", n0 - 1));

    // a_n + b_n/g_n < b_{n+1} / (g_{n+2} - a_{n+1})
    let next_cap = b.shift(1).checked_div(&gap.shift(1)).map_err(|e| BoundError::SymbolicInconclusive(e.to_string()))?;
    let image = a + &b.checked_div(g).map_err(|e| BoundError::SymbolicInconclusive(e.to_string()))?;
    let step = &next_cap - &image;
    let step_proof = prove_ratfunc_positive(&step, n0);
    let corrected_holds = step_proof.holds();
    let violation = if corrected_holds {
        None
    } else {
        witness_violation(&step_proof.witness, &next_cap, &image)
    };
    proofs.push(named("b(n+1)/(g(n+2) - a(n+1)) - a(n) - b(n)/g(n) > 0", n0, step_proof));

    // The lemma as printed: a_{n-1} + b_{n-1}/g_{n-1} < b_n / (g_{n+1} - b_n).
    let printed = printed_lemma_step(rec, g)
        .map(|p| prove_ratfunc_positive(&p, n0).holds())
        .unwrap_or(false);
    if printed != corrected_holds {
        notes.push(format!(
            "printed lemma form {} but corrected form {}; verdict uses the corrected form",
            if printed { "holds" } else { "fails" },
            if corrected_holds { "holds" } else { "fails" }
        ));
    } else {
        notes.push(format!(
            "printed and corrected lemma forms agree ({})",
            if printed { "both hold" } else { "both fail" }
        ));
    }

    Ok(BoundCheck {
        outcome: symbolic_outcome(n0, corrected_holds, true, Relation::Geq, violation),
        proofs,
        notes,
    })
}

fn printed_lemma_step(rec: &RecurrenceDef, g: &RatFunc) -> Option<RatFunc> {
    let (a, b) = (&rec.a, &rec.b);
    let cap = b.checked_div(&(&g.shift(1) - b)).ok()?;
    let image = &a.shift(-1) + &b.shift(-1).checked_div(&g.shift(-1)).ok()?;
    Some(&cap - &image)
}

fn lower_bound_monotone(
    rec: &RecurrenceDef,
    g: &RatFunc,
    n0: i64,
    sign_proof: NamedProof,
) -> Result<BoundCheck, BoundError> {
    let (a, b) = (&rec.a, &rec.b);
    let mut proofs = vec![sign_proof];
    let g_pos = prove_ratfunc_positive(g, n0);
    let g_ok = g_pos.holds();
    proofs.push(named("g(n) > 0", n0, g_pos));
    if !g_ok {
        return Err(BoundError::SymbolicInconclusive("g(n) is not positive".into()));
    }
    let (_, rho) = exact_ratios(rec, n0, n0)?.remove(0);
    let lower = eval(g, n0)?;
    if rho < lower {
        return Err(BoundError::BoundNotBracketing { index: n0, ratio: rho, upper: lower.clone(), lower });
    }
    let image = a + &b.checked_div(g).map_err(|e| BoundError::SymbolicInconclusive(e.to_string()))?;
    let target = g.shift(1);
    let step = &image - &target;
    let step_proof = prove_ratfunc_nonnegative(&step, n0);
    let holds = step_proof.holds();
    let violation = if holds { None } else { witness_violation(&step_proof.witness, &image, &target) };
    proofs.push(named("a(n) + b(n)/g(n) - g(n+1) >= 0", n0, step_proof));
    Ok(BoundCheck {
        outcome: symbolic_outcome(n0, holds, false, Relation::Geq, violation),
        proofs,
        notes: vec![
            format!("base: z_{n0}/z_{} = {rho} >= {lower}", n0 - 1),
            "b(n) < 0 makes rho -> a(n) + b(n)/rho increasing, so the bound propagates".into(),
        ],
    })
}

/// Exact interval images of `[lo, hi]` under `rho -> a_n + b_n / rho`.
///
/// Returns `(n, L_n, U_n)` for `n = n0 ..= horizon`, seeded with `[lo, hi]` at `n0`.
pub fn propagate_ratio_bounds(
    rec: &RecurrenceDef,
    n0: i64,
    lo: BigRat,
    hi: BigRat,
    horizon: i64,
) -> Result<Vec<(i64, BigRat, BigRat)>, BoundError> {
    let mut out = vec![(n0, lo, hi)];
    for n in n0..horizon {
        let (_, l, u) = out.last().unwrap();
        if !l.is_positive() {
            return Err(BoundError::IntervalDegenerate { index: n });
        }
        let (a, b) = (eval(&rec.a, n)?, eval(&rec.b, n)?);
        let (from_l, from_u) = (&a + &b / l, &a + &b / u);
        let (nl, nu) = if b.is_negative() { (from_l, from_u) } else { (from_u, from_l) };
        out.push((n + 1, nl, nu));
    }
    Ok(out)
}

fn lower_bound_by_intervals(
    rec: &RecurrenceDef,
    g: &RatFunc,
    n0: i64,
    horizon: i64,
    sign_proof: NamedProof,
) -> Result<BoundCheck, BoundError> {
    let (_, rho) = exact_ratios(rec, n0, n0)?.remove(0);
    let intervals = propagate_ratio_bounds(rec, n0, rho.clone(), rho, horizon)?;
    let mut violation = None;
    let mut equalities = 0;
    for (n, l, _) in &intervals {
        let gn = eval(g, *n)?;
        if *l == gn {
            equalities += 1;
        }
        if *l < gn && violation.is_none() {
            violation = Some(Violation { index: *n, lhs: l.clone(), rhs: gn });
        }
    }
    Ok(BoundCheck {
        outcome: CheckOutcome {
            holds: violation.is_none(),
            strict: false,
            relation: Relation::Geq,
            first_violation: violation,
            checked_range: (n0, horizon),
            equalities,
        },
        proofs: vec![sign_proof],
        notes: vec![format!(
            "interval propagation seeded with the exact ratio at n = {n0}; finite evidence on [{n0}, {horizon}], not a proof"
        )],
    })
}

/// Checks `z_n / z_{n-1} < h_n` for all `n >= n0` (requires `b < 0`).
pub fn verify_ratio_upper_bound(rec: &RecurrenceDef, h: &RatFunc, n0: i64) -> Result<BoundCheck, BoundError> {
    let (sign, sign_proof) = b_sign(rec, n0)?;
    if sign != BSign::Negative {
        return Err(BoundError::SignPrecondition(format!("b(n) = {} is not negative", rec.b)));
    }
    let (_, rho) = exact_ratios(rec, n0, n0)?.remove(0);
    let bound = eval(h, n0)?;
    if rho >= bound {
        return Err(BoundError::BaseFails { index: n0, ratio: rho, bound });
    }
    let image = &rec.a + &rec.b.checked_div(h).map_err(|e| BoundError::SymbolicInconclusive(e.to_string()))?;
    let target = h.shift(1);
    let step = &target - &image;
    let step_proof = prove_ratfunc_positive(&step, n0);
    let holds = step_proof.holds();
    let violation = if holds { None } else { witness_violation(&step_proof.witness, &target, &image) };
    Ok(BoundCheck {
        outcome: symbolic_outcome(n0, holds, true, Relation::Geq, violation),
        proofs: vec![sign_proof, named("h(n+1) - a(n) - b(n)/h(n) > 0", n0, step_proof)],
        notes: vec![format!("base: z_{n0}/z_{} = {rho} < {bound}", n0 - 1)],
    })
}

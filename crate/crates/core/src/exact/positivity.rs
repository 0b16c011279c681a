//! Complete decision procedure for "p(n) > 0 for every integer n >= N".
//!
//! Fast path: if `p(m + N)` has nonnegative coefficients and a positive
//! constant term, positivity on the whole real half-line follows. Otherwise
//! the real roots `>= N` are isolated into intervals of width below one, and
//! the finitely many integers that can witness a sign change are evaluated.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{isolate_real_roots, BigRat, ExactError, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityStatus {
    PositiveByShiftedCoefficients,
    PositiveBySturm,
    /// Only produced by the non-strict variant for the zero polynomial.
    IdenticallyZero,
    NotPositive,
}

/// Outcome of a positivity proof attempt.
///
/// When `status` is `NotPositive`, `witness` is the smallest integer `n >= N`
/// with `p(n) <= 0` (or `< 0` for the non-strict variant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub status: PositivityStatus,
    pub witness: Option<BigInt>,
    pub transcript: Vec<String>,
}

impl PositivityVerdict {
    pub fn holds(&self) -> bool {
        self.status != PositivityStatus::NotPositive
    }
}

/// Proves `p(n) > 0` for all integers `n >= n0`, or returns the smallest
/// counterexample.
pub fn prove_positive_on_integers(p: &IntPoly, n0: &BigInt) -> Result<PositivityVerdict, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    Ok(prove_sign(p, n0, true))
}

/// Proves `p(n) >= 0` for all integers `n >= n0`.
pub fn prove_nonnegative_on_integers(p: &IntPoly, n0: &BigInt) -> PositivityVerdict {
    if p.is_zero() {
        return PositivityVerdict {
            status: PositivityStatus::IdenticallyZero,
            witness: None,
            transcript: vec!["polynomial is identically zero".into()],
        };
    }
    prove_sign(p, n0, false)
}

fn violates(value: &BigInt, strict: bool) -> bool {
    if strict {
        !value.is_positive()
    } else {
        value.is_negative()
    }
}

fn prove_sign(p: &IntPoly, n0: &BigInt, strict: bool) -> PositivityVerdict {
    let rel = if strict { ">" } else { ">=" };
    let mut transcript = vec![format!("goal: {p} {rel} 0 for all integers n >= {n0}")];
    let at_start = p.eval_int(n0);
    transcript.push(format!("value at n = {n0}: {at_start}"));
    if violates(&at_start, strict) {
        transcript.push(format!("fails at n = {n0}"));
        return PositivityVerdict {
            status: PositivityStatus::NotPositive,
            witness: Some(n0.clone()),
            transcript,
        };
    }

    let shifted = p.shift(n0);
    if shifted.coeffs().iter().all(|c| !c.is_negative()) {
        transcript.push(format!(
            "substituting n = m + {n0}: {} has nonnegative coefficients",
            shifted.display_with("m")
        ));
        return PositivityVerdict {
            status: PositivityStatus::PositiveByShiftedCoefficients,
            witness: None,
            transcript,
        };
    }
    transcript.push(format!(
        "shifted form {} has a negative coefficient; isolating real roots",
        shifted.display_with("m")
    ));

    let start = BigRat::from_integer(n0.clone());
    let roots = isolate_real_roots(p, &start, &BigRat::one());
    transcript.push(format!("{} distinct real root(s) in [{n0}, inf)", roots.len()));

    // Integers at which the sign on [n0, inf) can first differ from p(n0).
    let mut candidates: Vec<BigInt> = vec![n0.clone()];
    for r in &roots {
        transcript.push(format!("root in ({}, {}]", r.lo, r.hi));
        let lo = r.lo.floor().to_integer();
        let hi = r.hi.ceil().to_integer() + BigInt::one();
        let mut k = lo.max(n0.clone());
        while k <= hi {
            candidates.push(k.clone());
            k += 1;
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in &candidates {
        let v = p.eval_int(c);
        if violates(&v, strict) {
            transcript.push(format!("value at n = {c}: {v}; fails"));
            return PositivityVerdict {
                status: PositivityStatus::NotPositive,
                witness: Some(c.clone()),
                transcript,
            };
        }
    }
    transcript.push(format!(
        "checked {} integer point(s) around the roots; sign is constant between roots",
        candidates.len()
    ));
    PositivityVerdict {
        status: PositivityStatus::PositiveBySturm,
        witness: None,
        transcript,
    }
}

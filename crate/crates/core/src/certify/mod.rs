//! Machine checks of the certificate theorems for ratio log-convexity.
//!
//! Both theorems reduce ratio log-convexity of `z_{n+1}/z_n` to sign
//! conditions on the recurrence coefficients and on the certificate
//! polynomial `f` evaluated at a ratio bound. Every condition becomes a
//! [`Hypothesis`] entry; the finite prefix below the proven range is checked
//! directly.

mod bounds;
mod builtin;
mod polys;

pub use bounds::{
    exact_ratios, propagate_ratio_bounds, prove_ratfunc_nonnegative, prove_ratfunc_positive,
    verify_ratio_lower_bound, verify_ratio_upper_bound, BoundCheck, BoundError, BoundMode, NamedProof,
    UNBOUNDED,
};
pub use builtin::{builtin_certificate, builtin_names};
pub use polys::{build_cert_polys, substitute_bound, CertPolySet, Which, XPoly};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{BigRat, PositivityVerdict, RatFunc};
use crate::logbehavior::{check_ratio_log_convex, CheckOutcome, Relation, Violation};
use crate::sequences::{RecurrenceDef, SequenceDef, Terms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("sequence {0:?} is not defined by a recurrence")]
    NotRecurrence(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("unknown built-in certificate {0:?}")]
    UnknownBuiltin(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Criterion for `b_n > 0` with a lower ratio bound `lambda`.
    Plus,
    /// Criterion for `b_n < 0` with ratio bounds `r <= z_n/z_{n-1} <= s`.
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    /// A hypothesis or the finite base check has an explicit counterexample.
    Refuted,
    /// Nothing failed outright, but some hypothesis could not be decided.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Evidence {
    Positivity { claim: String, verdict: PositivityVerdict },
    Bound { claim: String, check: BoundCheck },
    Finite { claim: String, outcome: CheckOutcome },
    Error { claim: String, message: String },
}

impl Evidence {
    fn status(&self) -> HypothesisStatus {
        match self {
            Evidence::Positivity { verdict, .. } if verdict.holds() => HypothesisStatus::Holds,
            Evidence::Positivity { .. } => HypothesisStatus::Fails,
            Evidence::Finite { outcome, .. } if outcome.holds => HypothesisStatus::Holds,
            Evidence::Finite { .. } => HypothesisStatus::Fails,
            // A failed induction step does not refute the bound itself.
            Evidence::Bound { check, .. } if check.outcome.holds => HypothesisStatus::Holds,
            Evidence::Bound { .. } | Evidence::Error { .. } => HypothesisStatus::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub statement: String,
    pub from: i64,
    pub status: HypothesisStatus,
    pub evidence: Vec<Evidence>,
}

impl Hypothesis {
    fn new(name: &str, statement: &str, from: i64, evidence: Vec<Evidence>) -> Self {
        let statuses: Vec<_> = evidence.iter().map(Evidence::status).collect();
        let status = if statuses.contains(&HypothesisStatus::Fails) {
            HypothesisStatus::Fails
        } else if statuses.contains(&HypothesisStatus::Undecided) || statuses.is_empty() {
            HypothesisStatus::Undecided
        } else {
            HypothesisStatus::Holds
        };
        Hypothesis { name: name.into(), statement: statement.into(), from, status, evidence }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub sequence: String,
    pub theorem: Theorem,
    #[serde(rename = "N")]
    pub n: i64,
    pub verdict: Verdict,
    pub hypotheses: Vec<Hypothesis>,
    /// The theorem part proves ratio log-convexity at every center `>= covered_from`.
    pub covered_from: i64,
    /// Centers checked directly by exact arithmetic.
    pub base_checked: (i64, i64),
    pub base: Option<CheckOutcome>,
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// Names of hypotheses that failed outright.
    pub fn failed(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|h| h.status == HypothesisStatus::Fails)
            .map(|h| h.name.as_str())
            .collect()
    }
}

pub const DEFAULT_BASE_WINDOW: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusCertificate {
    pub seq: SequenceDef,
    pub lambda: RatFunc,
    pub n: i64,
    pub base_window: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusCertificate {
    pub seq: SequenceDef,
    pub r: RatFunc,
    pub s: RatFunc,
    pub n: i64,
    pub base_window: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Plus(PlusCertificate),
    Minus(MinusCertificate),
}

impl Certificate {
    pub fn sequence(&self) -> &SequenceDef {
        match self {
            Certificate::Plus(c) => &c.seq,
            Certificate::Minus(c) => &c.seq,
        }
    }

    pub fn verify(&self) -> Result<CertificateReport, CertifyError> {
        match self {
            Certificate::Plus(c) => verify_theorem_plus(c),
            Certificate::Minus(c) => verify_theorem_minus(c),
        }
    }
}

fn recurrence_of(seq: &SequenceDef, n: i64, base_window: i64) -> Result<&RecurrenceDef, CertifyError> {
    let rec = seq.recurrence().ok_or_else(|| CertifyError::NotRecurrence(seq.name.clone()))?;
    if n < seq.offset() + 1 {
        return Err(CertifyError::InvalidCertificate(format!(
            "N = {n} must be at least offset + 1 = {}",
            seq.offset() + 1
        )));
    }
    if base_window < 0 {
        return Err(CertifyError::InvalidCertificate("base_window must be nonnegative".into()));
    }
    Ok(rec)
}

fn positive(claim: &str, r: &RatFunc, from: i64) -> Evidence {
    Evidence::Positivity { claim: claim.into(), verdict: prove_ratfunc_positive(r, from) }
}

fn nonnegative(claim: &str, r: &RatFunc, from: i64) -> Evidence {
    Evidence::Positivity { claim: claim.into(), verdict: prove_ratfunc_nonnegative(r, from) }
}

/// Compares `z_n / z_{n-1}` with `bound(n)` for `n` in `from..=to`; indices
/// with `z_{n-1} = 0` have no ratio and are skipped.
fn scan_ratio(terms: &Terms, bound: &RatFunc, from: i64, to: i64, lower: bool, strict: bool) -> Result<CheckOutcome, String> {
    let mut first_violation = None;
    let mut equalities = 0;
    for n in from..=to {
        let (Some(prev), Some(cur)) = (terms.get(n - 1), terms.get(n)) else {
            return Err(format!("no term at index {n}"));
        };
        if prev.is_zero() {
            continue;
        }
        let rho = cur / prev;
        let g = bound.eval_int(n).map_err(|e| format!("bound at n = {n}: {e}"))?;
        let (lhs, rhs) = if lower { (rho, g) } else { (g, rho) };
        if lhs == rhs {
            equalities += 1;
        }
        let ok = if strict { lhs > rhs } else { lhs >= rhs };
        if !ok && first_violation.is_none() {
            first_violation = Some(Violation { index: n, lhs, rhs });
        }
    }
    Ok(CheckOutcome {
        holds: first_violation.is_none(),
        strict,
        relation: Relation::Geq,
        first_violation,
        checked_range: (from, to),
        equalities,
    })
}

fn finite(claim: &str, result: Result<CheckOutcome, String>) -> Evidence {
    match result {
        Ok(outcome) => Evidence::Finite { claim: claim.into(), outcome },
        Err(message) => Evidence::Error { claim: claim.into(), message },
    }
}

fn bound_evidence(claim: &str, result: Result<BoundCheck, BoundError>) -> Evidence {
    match result {
        Ok(check) => Evidence::Bound { claim: claim.into(), check },
        // A base case that fails exactly is a counterexample to the bound.
        Err(BoundError::BaseFails { index, ratio, bound }) => Evidence::Finite {
            claim: claim.into(),
            outcome: CheckOutcome {
                holds: false,
                strict: true,
                relation: Relation::Geq,
                first_violation: Some(Violation { index, lhs: bound, rhs: ratio }),
                checked_range: (index, index),
                equalities: 0,
            },
        },
        Err(e) => Evidence::Error { claim: claim.into(), message: e.to_string() },
    }
}

/// First center `>= offset + 2` whose five-term window is positive.
fn first_positive_center(terms: &Terms) -> Option<i64> {
    let mut run = 0;
    for (i, v) in terms.values.iter().enumerate() {
        run = if v > &BigRat::from_integer(0.into()) { run + 1 } else { 0 };
        if run >= 5 {
            return Some(terms.start + i as i64 - 2);
        }
    }
    None
}

struct Base {
    checked: (i64, i64),
    outcome: Option<CheckOutcome>,
    notes: Vec<String>,
}

/// Strict ratio log-convexity at every center in `[first positive, to]`.
fn base_check(terms: &Terms, offset: i64, to: i64) -> Base {
    let mut notes = Vec::new();
    let Some(lo) = first_positive_center(terms) else {
        notes.push("no five consecutive positive terms in the base window".into());
        return Base { checked: (offset + 2, to), outcome: None, notes };
    };
    if lo > offset + 2 {
        notes.push(format!(
            "centers below {lo} involve nonpositive terms and are skipped by the base check"
        ));
    }
    if to < lo {
        return Base { checked: (lo, to), outcome: None, notes };
    }
    match check_ratio_log_convex(&terms.window(lo - 2, to + 2), true) {
        Ok(outcome) => Base { checked: outcome.checked_range, outcome: Some(outcome), notes },
        Err(e) => {
            notes.push(format!("base check failed to run: {e}"));
            Base { checked: (lo, to), outcome: None, notes }
        }
    }
}

fn verdict_of(hypotheses: &[Hypothesis], base: &Base) -> Verdict {
    let base_failed = base.outcome.as_ref().is_some_and(|o| !o.holds);
    if base_failed || hypotheses.iter().any(|h| h.status == HypothesisStatus::Fails) {
        Verdict::Refuted
    } else if hypotheses.iter().any(|h| h.status == HypothesisStatus::Undecided) {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    }
}

/// Checks the `b_n > 0` criterion; every hypothesis is evaluated.
pub fn verify_theorem_plus(cert: &PlusCertificate) -> Result<CertificateReport, CertifyError> {
    let rec = recurrence_of(&cert.seq, cert.n, cert.base_window)?;
    let (a, b, lambda) = (&rec.a, &rec.b, &cert.lambda);
    let n = cert.n;
    let from = n + 1;
    let top = n + cert.base_window;
    let terms = cert
        .seq
        .terms_through(top + 6)
        .map_err(|e| CertifyError::InvalidCertificate(e.to_string()))?;
    let mut notes = Vec::new();
    let mut hyps = Vec::new();

    hyps.push(Hypothesis::new(
        "H1",
        "b(n+1) >= b(n) > 0",
        1,
        vec![positive("b(n) > 0", b, 1), nonnegative("b(n+1) - b(n) >= 0", &(&b.shift(1) - b), 1)],
    ));
    hyps.push(Hypothesis::new(
        "H2",
        "a(n+1) >= a(n) > 0",
        1,
        vec![positive("a(n) > 0", a, 1), nonnegative("a(n+1) - a(n) >= 0", &(&a.shift(1) - a), 1)],
    ));
    let h3 = &(&(a * a).scale(&BigRat::from_integer(21.into())) + &(&a.shift(1) * a).scale(&BigRat::from_integer(11.into())))
        - &b.shift(-1).scale(&BigRat::from_integer(4.into()));
    hyps.push(Hypothesis::new(
        "H3",
        "21 a(n)^2 + 11 a(n+1) a(n) - 4 b(n-1) >= 0",
        1,
        vec![nonnegative("21 a(n)^2 + 11 a(n+1) a(n) - 4 b(n-1) >= 0", &h3, 1)],
    ));
    hyps.push(Hypothesis::new(
        "H4",
        "lambda(n) >= a(n)",
        from,
        vec![nonnegative("lambda(n) - a(n) >= 0", &(lambda - a), from)],
    ));

    // H5: z_n / z_{n-1} >= lambda(n). A finite scan first, for a witness.
    let scan_to = top.max(from);
    let mut h5 = vec![finite(
        "z(n)/z(n-1) >= lambda(n) on the base window",
        scan_ratio(&terms, lambda, from, scan_to, true, false),
    )];
    if h5[0].status() == HypothesisStatus::Holds {
        h5.push(bound_evidence(
            "z(n)/z(n-1) >= lambda(n) for all n",
            verify_ratio_lower_bound(rec, lambda, from, BoundMode::Symbolic),
        ));
    }
    hyps.push(Hypothesis::new("H5", "z(n)/z(n-1) >= lambda(n)", from, h5));
    let shifts: Vec<i64> = (0..=2)
        .filter(|k| {
            (from..=scan_to).all(|m| {
                let (Some(p), Some(c)) = (terms.get(m + k - 1), terms.get(m + k)) else {
                    return false;
                };
                lambda.eval_int(m).is_ok_and(|l| !p.is_zero() && c / p >= l)
            })
        })
        .collect();
    notes.push(format!(
        "indexing diagnostic: z(n+k)/z(n+k-1) >= lambda(n) holds on [{from}, {scan_to}] for k in {shifts:?}"
    ));

    let ps = build_cert_polys(a, b);
    for (name, which, label) in [("H6", Which::F2, "f''(lambda(n)) > 0"), ("H7", Which::F1, "f'(lambda(n)) > 0"), ("H8", Which::F, "f(lambda(n)) > 0")] {
        let r = substitute_bound(&ps, which, lambda);
        hyps.push(Hypothesis::new(name, label, from, vec![positive(label, &r, from)]));
    }

    let base = base_check(&terms, cert.seq.offset(), top);
    notes.extend(base.notes.iter().cloned());
    Ok(CertificateReport {
        sequence: cert.seq.name.clone(),
        theorem: Theorem::Plus,
        n,
        verdict: verdict_of(&hyps, &base),
        hypotheses: hyps,
        covered_from: from,
        base_checked: base.checked,
        base: base.outcome,
        notes,
    })
}

/// Checks the `b_n < 0` criterion; every condition is evaluated.
pub fn verify_theorem_minus(cert: &MinusCertificate) -> Result<CertificateReport, CertifyError> {
    let rec = recurrence_of(&cert.seq, cert.n, cert.base_window)?;
    let (a, b, r, s) = (&rec.a, &rec.b, &cert.r, &cert.s);
    let n = cert.n;
    let top = n + cert.base_window;
    let terms = cert
        .seq
        .terms_through(top + 6)
        .map_err(|e| CertifyError::InvalidCertificate(e.to_string()))?;
    let ps = build_cert_polys(a, b);
    let lead = &ps.lead;
    let mut notes = Vec::new();
    let mut hyps = Vec::new();

    hyps.push(Hypothesis::new(
        "P1",
        "b(n) < 0, a(n+1) a(n) + b(n+1) > 0, a(n) > 0",
        1,
        vec![
            positive("-b(n) > 0", &-b, 1),
            positive("a(n+1) a(n) + b(n+1) > 0", lead, 1),
            positive("a(n) > 0", a, 1),
        ],
    ));

    let scan_to = top.max(n);
    hyps.push(Hypothesis::new(
        "(i) lower",
        "r(n) <= z(n)/z(n-1)",
        n,
        vec![
            finite("z(n)/z(n-1) >= r(n) on the base window", scan_ratio(&terms, r, n, scan_to, true, false)),
            bound_evidence(
                "z(n)/z(n-1) >= r(n) for all n",
                verify_ratio_lower_bound(rec, r, n, BoundMode::Symbolic),
            ),
        ],
    ));
    hyps.push(Hypothesis::new(
        "(i) upper",
        "z(n)/z(n-1) <= s(n) <= a(n)",
        n,
        vec![
            finite("s(n) >= z(n)/z(n-1) on the base window", scan_ratio(&terms, s, n, scan_to, false, false)),
            bound_evidence("z(n)/z(n-1) < s(n) for all n", verify_ratio_upper_bound(rec, s, n)),
            nonnegative("a(n) - s(n) >= 0", &(a - s), n),
        ],
    ));

    let lo = n.min(1);
    notes.push(format!("condition (ii) is checked for n >= {lo}"));
    let (a1, am) = (a.shift(1), a.shift(-1));
    let rest = &(&(&a1 * b) - &(&(&am * &a1) * a)) - &(&am * &b.shift(1));
    let cond = &(lead * r).scale(&BigRat::from_integer(8.into())) + &rest.scale(&BigRat::from_integer(5.into()));
    hyps.push(Hypothesis::new(
        "(ii)",
        "8 (a(n+1) a(n) + b(n+1)) r(n) + 5 (a(n+1) b(n) - a(n-1) a(n+1) a(n) - a(n-1) b(n+1)) >= 0 and a(n) r(n) + b(n) >= 0",
        lo,
        vec![
            nonnegative("8 lead r + 5 (...) >= 0", &cond, lo),
            nonnegative("a(n) r(n) + b(n) >= 0", &(&(a * r) + b), lo),
        ],
    ));
    hyps.push(Hypothesis::new(
        "(iii)",
        "f''(r(n)) > 0, f'(r(n)) > 0, f(s(n)) < 0",
        n,
        vec![
            positive("f''(r(n)) > 0", &substitute_bound(&ps, Which::F2, r), n),
            positive("f'(r(n)) > 0", &substitute_bound(&ps, Which::F1, r), n),
            positive("-f(s(n)) > 0", &-&substitute_bound(&ps, Which::F, s), n),
        ],
    ));

    let base = base_check(&terms, cert.seq.offset(), top);
    notes.extend(base.notes.iter().cloned());
    Ok(CertificateReport {
        sequence: cert.seq.name.clone(),
        theorem: Theorem::Minus,
        n,
        verdict: verdict_of(&hyps, &base),
        hypotheses: hyps,
        covered_from: n,
        base_checked: base.checked,
        base: base.outcome,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::catalog_lookup;

    fn report(name: &str) -> CertificateReport {
        builtin_certificate(name).unwrap().verify().unwrap()
    }

    #[test]
    fn domb_under_plus_fails_at_h1() {
        let cert = PlusCertificate {
            seq: catalog_lookup("domb").unwrap(),
            lambda: RatFunc::from_int(15),
            n: 1,
            base_window: 8,
        };
        let rep = verify_theorem_plus(&cert).unwrap();
        assert_eq!(rep.verdict, Verdict::Refuted);
        assert_eq!(rep.hypothesis("H1").unwrap().status, HypothesisStatus::Fails);
        assert_eq!(rep.hypotheses.len(), 8);
    }

    #[test]
    fn zero_lower_bound_refutes_condition_ii() {
        let Certificate::Minus(mut cert) = builtin_certificate("domb").unwrap() else { panic!() };
        cert.r = RatFunc::zero();
        let rep = verify_theorem_minus(&cert).unwrap();
        assert_eq!(rep.verdict, Verdict::Refuted);
        let ii = rep.hypothesis("(ii)").unwrap();
        assert_eq!(ii.status, HypothesisStatus::Fails);
        let Evidence::Positivity { verdict, .. } = &ii.evidence[1] else { panic!() };
        assert!(!verdict.holds());
    }

    #[test]
    fn domb_fails_only_at_upper_endpoint_condition() {
        let rep = report("domb");
        assert_eq!(rep.base_checked, (2, 181));
        assert!(rep.base.as_ref().unwrap().holds);
        assert_eq!(rep.covered_from, 181);
        for h in ["P1", "(i) lower", "(i) upper", "(ii)"] {
            assert_eq!(rep.hypothesis(h).unwrap().status, HypothesisStatus::Holds, "{h}");
        }
        // s(n) is so tight that f(s(n)) > 0 from n = 50 on; a floating-point
        // evaluation gives f(s(181)) ~ 1.6e4.
        let iii = rep.hypothesis("(iii)").unwrap();
        assert_eq!(iii.status, HypothesisStatus::Fails);
        let Evidence::Positivity { verdict, .. } = &iii.evidence[2] else { panic!() };
        assert_eq!(verdict.witness, Some(181.into()));
        assert_eq!(rep.verdict, Verdict::Refuted);
    }

    #[test]
    fn derangement_statement_form_bound_fails() {
        let rep = report("derangement");
        let h5 = rep.hypothesis("H5").unwrap();
        assert_eq!(h5.status, HypothesisStatus::Fails);
        let Evidence::Finite { outcome, .. } = &h5.evidence[0] else { panic!() };
        // z_3/z_2 = 2 < lambda(3) = 3.
        assert_eq!(outcome.first_violation.as_ref().unwrap().index, 3);
        for h in ["H1", "H2", "H3", "H4", "H6", "H7", "H8"] {
            assert_eq!(rep.hypothesis(h).unwrap().status, HypothesisStatus::Holds, "{h}");
        }
        // Ratio log-convexity fails at centers 5 and 7.
        let base = rep.base.as_ref().unwrap();
        assert_eq!(base.first_violation.as_ref().unwrap().index, 5);
        assert_eq!(rep.verdict, Verdict::Refuted);
    }

    #[test]
    fn invalid_certificates() {
        let cert = PlusCertificate {
            seq: catalog_lookup("catalan").unwrap(),
            lambda: RatFunc::one(),
            n: 1,
            base_window: 4,
        };
        assert!(matches!(verify_theorem_plus(&cert), Err(CertifyError::NotRecurrence(_))));
        let cert = PlusCertificate { seq: catalog_lookup("motzkin").unwrap(), n: 0, ..cert };
        assert!(matches!(verify_theorem_plus(&cert), Err(CertifyError::InvalidCertificate(_))));
        assert!(matches!(builtin_certificate("nope"), Err(CertifyError::UnknownBuiltin(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&report("motzkin")).unwrap();
        let b = serde_json::to_string(&report("motzkin")).unwrap();
        assert_eq!(a, b);
        let back: CertificateReport = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }
}

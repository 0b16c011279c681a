//! Rigorous enclosures of
//!
//! `h(t,u) = 1/(1-e^{-t}) - e^{-tp(u+1)}/(1-e^{-pt}) - e^{uqt}/(1-e^{-qt})`
//!
//! using rational interval arithmetic, rounded outward to a working number of
//! significant bits after every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GammaError;
use crate::exact::{rat_serde, BigRat};
use crate::logbehavior::{CheckOutcome, Relation, Violation};

pub const DEFAULT_DIGITS: u32 = 50;
const MAX_RETRIES: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HKernelParams {
    #[serde(with = "rat_serde")]
    pub t: BigRat,
    #[serde(with = "rat_serde")]
    pub u: BigRat,
    #[serde(with = "rat_serde")]
    pub p: BigRat,
    #[serde(with = "rat_serde")]
    pub q: BigRat,
    /// Target precision in significant decimal digits.
    pub digits: u32,
}

impl HKernelParams {
    pub fn new(t: BigRat, u: BigRat, p: BigRat, q: BigRat) -> Self {
        HKernelParams { t, u, p, q, digits: DEFAULT_DIGITS }
    }
}

/// A certified enclosure `lo <= h <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HValue {
    #[serde(with = "rat_serde")]
    pub lo: BigRat,
    #[serde(with = "rat_serde")]
    pub hi: BigRat,
    /// Precision of the evaluation that succeeded.
    pub digits: u32,
}

impl HValue {
    pub fn midpoint(&self) -> BigRat {
        (&self.lo + &self.hi) / BigRat::from_integer(2.into())
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }
}

fn pow2(s: i64) -> BigRat {
    let p = BigInt::one() << s.unsigned_abs();
    if s >= 0 {
        BigRat::from_integer(p)
    } else {
        BigRat::new(BigInt::one(), p)
    }
}

/// Rounds to `bits` significant bits, downward or upward.
fn round(x: &BigRat, bits: u64, up: bool) -> BigRat {
    if x.is_zero() {
        return x.clone();
    }
    let e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let s = bits as i64 - e;
    let scaled = x * pow2(s);
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r * pow2(-s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Interval {
    lo: BigRat,
    hi: BigRat,
}

impl Interval {
    fn point(x: BigRat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn around(mid: &BigRat, radius: &BigRat, bits: u64) -> Self {
        Interval { lo: round(&(mid - radius), bits, false), hi: round(&(mid + radius), bits, true) }
    }

    fn rounded(self, bits: u64) -> Self {
        Interval { lo: round(&self.lo, bits, false), hi: round(&self.hi, bits, true) }
    }

    fn sub(&self, o: &Interval, bits: u64) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }.rounded(bits)
    }

    fn mul(&self, o: &Interval, bits: u64) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }.rounded(bits)
    }

    fn recip(&self, bits: u64) -> Option<Self> {
        if !(self.lo.is_positive() || self.hi.is_negative()) {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() }.rounded(bits))
    }
}

/// Sums a power series term by term until the current term drops below
/// `2^-bits`; `next(term, j)` produces term `j` from term `j - 1`. When the
/// tail is dominated by the last term kept, it is the error radius.
fn series(first: BigRat, bits: u64, next: impl Fn(&BigRat, u64) -> BigRat) -> (BigRat, BigRat) {
    let eps = pow2(-(bits as i64));
    let mut sum = first.clone();
    let mut term = first;
    let mut j = 1;
    while term.abs() >= eps {
        term = next(&term, j);
        sum += &term;
        j += 1;
    }
    (sum, term.abs())
}

/// `e^x` for a rational point `x`.
fn exp(x: &BigRat, bits: u64) -> Interval {
    let half = BigRat::new(1.into(), 2.into());
    let mut y = x.clone();
    let mut k = 0u64;
    while y.abs() > half {
        y /= BigRat::from_integer(2.into());
        k += 1;
    }
    let work = bits + k + 16;
    // For |y| <= 1/2 every later term is at most a quarter of the previous.
    let (sum, tail) = series(BigRat::one(), work, |t, j| t * &y / BigRat::from_integer(j.into()));
    let mut e = Interval::around(&sum, &tail, work);
    for _ in 0..k {
        e = e.mul(&e, work);
    }
    e.rounded(bits + 8)
}

/// `1 - e^{-x}` for `x > 0`, by its own series when cancellation would bite.
fn one_minus_exp_neg(x: &BigRat, bits: u64) -> Interval {
    if *x <= BigRat::new(1.into(), 2.into()) {
        // x - x^2/2! + x^3/3! - ...: alternating with decreasing terms.
        let (sum, tail) = series(x.clone(), bits + 16, |t, j| -(t * x) / BigRat::from_integer((j + 1).into()));
        Interval::around(&sum, &tail, bits + 8)
    } else {
        Interval::point(BigRat::one()).sub(&exp(&-x, bits), bits + 8)
    }
}

fn enclose(params: &HKernelParams, bits: u64) -> Option<Interval> {
    let HKernelParams { t, u, p, q, .. } = params;
    let one = BigRat::one();
    let a = one_minus_exp_neg(t, bits).recip(bits)?;
    let b = exp(&-(t * p * (u + &one)), bits).mul(&one_minus_exp_neg(&(p * t), bits).recip(bits)?, bits);
    let c = exp(&(u * q * t), bits).mul(&one_minus_exp_neg(&(q * t), bits).recip(bits)?, bits);
    Some(a.sub(&b, bits).sub(&c, bits))
}

fn digits_to_bits(digits: u32) -> u64 {
    (digits as u64 * 3322).div_ceil(1000) + 16
}

/// Evaluates `h(t,u)` for the given `p, q`, doubling the precision up to three
/// times when the enclosure is wider than half the value's magnitude.
pub fn h_kernel_eval(params: &HKernelParams) -> Result<HValue, GammaError> {
    if !params.t.is_positive() || !params.p.is_positive() || !params.q.is_positive() {
        return Err(GammaError::InvalidParameters("t, p and q must be positive".into()));
    }
    let mut digits = params.digits.max(1);
    let mut last_width = BigRat::zero();
    for _ in 0..=MAX_RETRIES {
        if let Some(iv) = enclose(params, digits_to_bits(digits)) {
            let v = HValue { lo: iv.lo, hi: iv.hi, digits };
            last_width = v.width();
            if v.width() * BigRat::from_integer(2.into()) <= v.midpoint().abs() {
                return Ok(v);
            }
        }
        digits *= 2;
    }
    Err(GammaError::PrecisionLoss {
        t: params.t.to_string(),
        u: params.u.to_string(),
        width: last_width.to_f64().unwrap_or(f64::INFINITY),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    #[serde(with = "rat_serde")]
    pub t: BigRat,
    #[serde(with = "rat_serde")]
    pub u: BigRat,
    pub value: HValue,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HKernelReport {
    #[serde(with = "rat_serde")]
    pub p: BigRat,
    #[serde(with = "rat_serde")]
    pub q: BigRat,
    /// Indices in `checked_range` and in violations refer to `points`.
    pub outcome: CheckOutcome,
    pub points: Vec<HPoint>,
    pub label: String,
}

/// Checks `h > 0` on a grid: a point passes when its whole enclosure is positive.
pub fn h_kernel_grid_check(
    p: &BigRat,
    q: &BigRat,
    grid_t: &[BigRat],
    grid_u: &[BigRat],
    digits: u32,
) -> Result<HKernelReport, GammaError> {
    if grid_t.is_empty() || grid_u.is_empty() {
        return Err(GammaError::InvalidParameters("grids must be nonempty".into()));
    }
    if !p.is_positive() || !q.is_positive() || p.recip() + q.recip() > BigRat::one() {
        return Err(GammaError::InvalidParameters("need p, q > 0 and 1/p + 1/q <= 1".into()));
    }
    if let Some(u) = grid_u.iter().find(|u| **u < -BigRat::one() || u.is_positive()) {
        return Err(GammaError::InvalidParameters(format!("u = {u} is outside [-1, 0]")));
    }
    let mut points = Vec::new();
    let mut first_violation = None;
    for t in grid_t {
        for u in grid_u {
            let params = HKernelParams { t: t.clone(), u: u.clone(), p: p.clone(), q: q.clone(), digits };
            let value = h_kernel_eval(&params)?;
            if !value.is_positive() && first_violation.is_none() {
                first_violation = Some(Violation {
                    index: points.len() as i64,
                    lhs: value.lo.clone(),
                    rhs: BigRat::zero(),
                });
            }
            let approx = value.approx();
            points.push(HPoint { t: t.clone(), u: u.clone(), value, approx });
        }
    }
    Ok(HKernelReport {
        p: p.clone(),
        q: q.clone(),
        outcome: CheckOutcome {
            holds: first_violation.is_none(),
            strict: true,
            relation: Relation::Geq,
            first_violation,
            checked_range: (0, points.len() as i64 - 1),
            equalities: 0,
        },
        points,
        label: "numeric evidence, not proof".into(),
    })
}

/// Upper bound on `|h(t,-1;p,q) - h(t,0;q,p)|` from the two enclosures.
pub fn h_kernel_symmetry_gap(t: &BigRat, p: &BigRat, q: &BigRat, digits: u32) -> Result<BigRat, GammaError> {
    let left = h_kernel_eval(&HKernelParams { t: t.clone(), u: -BigRat::one(), p: p.clone(), q: q.clone(), digits })?;
    let right = h_kernel_eval(&HKernelParams { t: t.clone(), u: BigRat::zero(), p: q.clone(), q: p.clone(), digits })?;
    let hi = left.hi.clone().max(right.hi.clone());
    let lo = left.lo.min(right.lo);
    Ok(hi - lo)
}

//! Exact arithmetic: rationals, integer polynomials, rational functions in
//! the index variable, Sturm chains and positivity proofs over integer
//! half-lines.

mod poly;
mod positivity;
pub mod rat_serde;
mod ratfunc;
mod sturm;

pub use poly::{poly_arith, poly_derivative, poly_eval, IntPoly, PolyOp};
pub use positivity::{
    prove_nonnegative_on_integers, prove_positive_on_integers, PositivityStatus,
    PositivityVerdict,
};
pub use ratfunc::{ratfunc_compose_shift, ratfunc_eval, RatFunc};
pub use sturm::{isolate_real_roots, sturm_distinct_roots_geq, RootInterval, SturmChain};

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("rational function has a pole at n = {0}")]
    PoleAtPoint(BigRat),
    #[error("zero polynomial has no positivity verdict")]
    ZeroPolynomial,
    #[error("division by the zero rational function")]
    DivisionByZero,
}

/// Shorthand for `num/den` as a [`BigRat`].
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Floor of a rational as an integer.
pub fn floor(x: &BigRat) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &BigRat) -> BigInt {
    x.ceil().to_integer()
}

/// Absolute value helper that keeps call sites short.
pub fn abs(x: &BigRat) -> BigRat {
    x.abs()
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRat::from_integer),
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_number(s: &str) -> Option<BigRat> {
    let s = s.trim();
    let Some((whole, frac)) = s.split_once('.') else {
        return parse_rat(s);
    };
    if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let negative = whole.starts_with('-');
    let digits = whole.trim_start_matches(['-', '+']);
    if !digits.bytes().all(|c| c.is_ascii_digit()) || whole.len() - digits.len() > 1 {
        return None;
    }
    let mantissa: BigInt = format!("{digits}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let x = BigRat::new(mantissa, scale);
    Some(if negative { -x } else { x })
}

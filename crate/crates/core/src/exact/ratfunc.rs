//! Rational functions `num(n)/den(n)` over the integers, kept in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BigRat, ExactError, IntPoly};

/// Quotient of two integer polynomials in the index variable.
///
/// Invariants: `den` is nonzero, `gcd(num, den) = 1` in `Z[n]` and `den` has
/// a positive leading coefficient. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc", into = "RawRatFunc")]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct RawRatFunc {
    num: IntPoly,
    #[serde(default = "IntPoly::one")]
    den: IntPoly,
}

impl TryFrom<RawRatFunc> for RatFunc {
    type Error = String;

    fn try_from(raw: RawRatFunc) -> Result<Self, Self::Error> {
        RatFunc::new(raw.num, raw.den).ok_or_else(|| "zero denominator".to_string())
    }
}

impl From<RatFunc> for RawRatFunc {
    fn from(r: RatFunc) -> Self {
        RawRatFunc { num: r.num, den: r.den }
    }
}

pub fn ratfunc_compose_shift(r: &RatFunc, offset: i64) -> RatFunc {
    r.shift(offset)
}

pub fn ratfunc_eval(r: &RatFunc, n: &BigRat) -> Result<BigRat, ExactError> {
    r.eval(n)
}

impl RatFunc {
    /// Canonicalizes `num/den`; `None` if `den` is the zero polynomial.
    pub fn new(num: IntPoly, den: IntPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.sign_at_pos_inf() == Ordering::Less {
            num = -num;
            den = -den;
        }
        Some(RatFunc { num, den })
    }

    /// Builds from coefficient slices, ascending degree.
    ///
    /// Panics on a zero denominator; intended for literals.
    pub fn from_i64s(num: &[i64], den: &[i64]) -> Self {
        Self::new(IntPoly::from_i64s(num), IntPoly::from_i64s(den)).expect("nonzero denominator")
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn constant(c: &BigRat) -> Self {
        Self::new(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
        .expect("rational denominators are nonzero")
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPoly::constant(BigInt::from(c)))
    }

    /// The index variable `n`.
    pub fn n() -> Self {
        Self::from_poly(IntPoly::x())
    }

    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant() && self.den.coeffs() == [BigInt::one()]
    }

    /// The value when the function does not depend on `n`.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRat::new(self.num.constant_term(), self.den.constant_term()))
        } else {
            None
        }
    }

    pub fn eval(&self, n: &BigRat) -> Result<BigRat, ExactError> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint(n.clone()));
        }
        Ok(self.num.eval(n) / d)
    }

    pub fn eval_int(&self, n: i64) -> Result<BigRat, ExactError> {
        self.eval(&BigRat::from_integer(BigInt::from(n)))
    }

    /// `r(n + offset)`.
    pub fn shift(&self, offset: i64) -> Self {
        if offset == 0 {
            return self.clone();
        }
        let c = BigInt::from(offset);
        Self::new(self.num.shift(&c), self.den.shift(&c)).expect("shift keeps denominator nonzero")
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone()).ok_or(ExactError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        self * &Self::constant(c)
    }

    /// `num * den`: has the sign of the function wherever the function is defined.
    pub fn sign_polynomial(&self) -> IntPoly {
        &self.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn motzkin_coefficient_shift() {
        let a = RatFunc::from_i64s(&[3, 2], &[3, 1]);
        assert_eq!(ratfunc_compose_shift(&a, 1), RatFunc::from_i64s(&[5, 2], &[4, 1]));
        assert_eq!(ratfunc_compose_shift(&a, 0), a);
        assert_eq!(ratfunc_compose_shift(&RatFunc::n(), -1), RatFunc::from_i64s(&[-1, 1], &[1]));
    }

    #[test]
    fn evaluation() {
        let lambda = RatFunc::from_i64s(&[6, 4], &[3, 1]);
        assert_eq!(ratfunc_eval(&lambda, &int(2)).unwrap(), rat(14, 5));
        assert_eq!(ratfunc_eval(&RatFunc::constant(&int(15)), &int(99)).unwrap(), int(15));
        let franel = RatFunc::from_i64s(&[1, 8, 8], &[1, 2, 1]);
        assert_eq!(ratfunc_eval(&franel, &int(1)).unwrap(), rat(17, 4));
        assert_eq!(
            ratfunc_eval(&lambda, &int(-3)),
            Err(ExactError::PoleAtPoint(int(-3)))
        );
    }

    #[test]
    fn canonical_form() {
        // (2n^2 + 2n) / (4n + 4) = n / 2
        let r = RatFunc::from_i64s(&[0, 2, 2], &[4, 4]);
        assert_eq!(r.num(), &IntPoly::from_i64s(&[0, 1]));
        assert_eq!(r.den(), &IntPoly::from_i64s(&[2]));
        // negative leading denominator flips sign
        let s = RatFunc::from_i64s(&[1], &[0, -1]);
        assert_eq!(s.num(), &IntPoly::from_i64s(&[-1]));
        assert_eq!(s.den(), &IntPoly::from_i64s(&[0, 1]));
        assert!(RatFunc::new(IntPoly::one(), IntPoly::zero()).is_none());
        assert_eq!(RatFunc::from_i64s(&[0], &[5, 1]), RatFunc::zero());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::from_i64s(&[3, 2], &[3, 1]);
        let b = RatFunc::from_i64s(&[0, 3], &[3, 1]);
        let sum = &a + &b;
        assert_eq!(sum, RatFunc::from_i64s(&[3, 5], &[3, 1]));
        assert_eq!(&(&sum - &b), &a);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(q, RatFunc::from_i64s(&[3, 2], &[0, 3]));
        assert!(a.checked_div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn json_shape() {
        let r = RatFunc::from_i64s(&[6, 4], &[3, 1]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":["6","4"],"den":["3","1"]}"#);
        let back: RatFunc = serde_json::from_str(r#"{"num":["12","8"],"den":["6","2"]}"#).unwrap();
        assert_eq!(back, r);
        let poly: RatFunc = serde_json::from_str(r#"{"num":["0","1"]}"#).unwrap();
        assert_eq!(poly, RatFunc::n());
        assert!(serde_json::from_str::<RatFunc>(r#"{"num":["1"],"den":[]}"#).is_err());
    }
}

//! The certificate polynomial
//!
//! `f(x) = [(a_{n+1} a_n + b_{n+1}) x + a_{n+1} b_n] (x - a_{n-1}) x^6 - b_{n-1} (a_n x + b_n)^4`
//!
//! with coefficients that are rational functions of `n`, and its first three
//! derivatives in `x`.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::exact::{BigRat, ExactError, RatFunc};

/// Polynomial in `x` whose coefficients (ascending degree) are rational
/// functions of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XPoly {
    pub coeffs: Vec<RatFunc>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    /// `c1 x + c0`.
    pub fn linear(c1: RatFunc, c0: RatFunc) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![RatFunc::zero(); k];
        c.push(RatFunc::one());
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(RatFunc::one()), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &RatFunc::from_int(i as i64))
                .collect(),
        )
    }

    /// Substitutes `x := bound(n)`, giving a rational function of `n`.
    pub fn substitute(&self, bound: &RatFunc) -> RatFunc {
        self.coeffs
            .iter()
            .rev()
            .fold(RatFunc::zero(), |acc, c| &(&acc * bound) + c)
    }

    /// Value at a concrete index `n` and point `x`.
    pub fn eval(&self, n: i64, x: &BigRat) -> Result<BigRat, ExactError> {
        let mut acc = BigRat::from_integer(0.into());
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_int(n)?;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = RatFunc::zero();
        XPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = RatFunc::zero();
        XPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a XPoly> for &'a XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::new(Vec::new());
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
        XPoly::new(out)
    }
}

/// Which of `f, f', f''` to substitute into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    F,
    F1,
    F2,
}

/// `f` and its first three `x`-derivatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertPolySet {
    pub f: XPoly,
    pub f1: XPoly,
    pub f2: XPoly,
    pub f3: XPoly,
    /// `a_{n+1} a_n + b_{n+1}`, the leading coefficient of `f`.
    pub lead: RatFunc,
}

impl CertPolySet {
    pub fn get(&self, which: Which) -> &XPoly {
        match which {
            Which::F => &self.f,
            Which::F1 => &self.f1,
            Which::F2 => &self.f2,
        }
    }
}

pub fn build_cert_polys(a: &RatFunc, b: &RatFunc) -> CertPolySet {
    let (a_next, a_prev) = (a.shift(1), a.shift(-1));
    let (b_next, b_prev) = (b.shift(1), b.shift(-1));
    let lead = &(&a_next * a) + &b_next;
    let first = XPoly::linear(lead.clone(), &a_next * b);
    let shifted_x = XPoly::linear(RatFunc::one(), -&a_prev);
    let linear_part = &(&first * &shifted_x) * &XPoly::monomial(6);
    let quartic = &XPoly::constant(b_prev) * &XPoly::linear(a.clone(), b.clone()).pow(4);
    let f = &linear_part - &quartic;
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let f3 = f2.derivative();
    CertPolySet { f, f1, f2, f3, lead }
}

/// `f(bound(n))`, `f'(bound(n))` or `f''(bound(n))` as a canonical rational
/// function of `n`.
pub fn substitute_bound(ps: &CertPolySet, which: Which, bound: &RatFunc) -> RatFunc {
    ps.get(which).substitute(bound)
}

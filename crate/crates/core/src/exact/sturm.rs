//! Sturm chains over `Z[x]` and real root isolation with rational endpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BigRat, IntPoly};

/// Sturm chain of the square-free part of a polynomial.
///
/// Each remainder is a negated pseudo-remainder scaled by a positive factor,
/// with content stripped, so sign variation counts are exact.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Panics on the zero polynomial.
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let s = p.square_free();
        let mut chain = vec![s.clone()];
        let ds = s.derivative();
        if ds.is_zero() {
            return SturmChain { chain };
        }
        chain.push(ds.primitive());
        loop {
            let n = chain.len();
            let (prev, last) = (&chain[n - 2], &chain[n - 1]);
            let r = prev.pseudo_rem(last);
            if r.is_zero() {
                break;
            }
            // prem = lc^k * prev mod last; a negative scale factor flips the sign.
            let dp = prev.degree().unwrap();
            let dl = last.degree().unwrap();
            let k = if dp >= dl { dp - dl + 1 } else { 0 };
            let lc_neg = last.leading().unwrap() < &BigInt::zero();
            let factor_neg = lc_neg && k % 2 == 1;
            let r = r.strip_content();
            let next = if factor_neg { r } else { -r };
            chain.push(next);
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    pub fn square_free_part(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRat) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_variations(self.chain.iter().map(IntPoly::sign_at_pos_inf))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_variations(self.chain.iter().map(IntPoly::sign_at_neg_inf))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRat, b: &BigRat) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRat) -> usize {
        self.variations_at(a) - self.variations_at_pos_inf()
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `p` in `[x0, +inf)`.
pub fn sturm_distinct_roots_geq(p: &IntPoly, x0: &BigRat) -> usize {
    let chain = SturmChain::new(p);
    let at = usize::from(p.sign_at(x0) == Ordering::Equal);
    at + chain.count_above(x0)
}

/// An isolating interval for one real root: either the exact root
/// (`lo == hi`) or a root in the open-closed interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRat,
    pub hi: BigRat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }
}

/// Isolates every distinct real root of `p` that is `>= x0`, refining each
/// interval until its width is at most `max_width`. Intervals are returned in
/// increasing order.
pub fn isolate_real_roots(p: &IntPoly, x0: &BigRat, max_width: &BigRat) -> Vec<RootInterval> {
    let chain = SturmChain::new(p);
    let sf = chain.square_free_part().clone();
    let mut out = Vec::new();
    if sf.sign_at(x0) == Ordering::Equal {
        out.push(RootInterval { lo: x0.clone(), hi: x0.clone() });
    }
    let bound = BigRat::from_integer(sf.root_bound());
    let hi = if &bound > x0 { bound } else { x0 + BigRat::from_integer(BigInt::from(1)) };
    let total = chain.count_in(x0, &hi);
    let two = BigRat::from_integer(BigInt::from(2));
    let mut stack = vec![(x0.clone(), hi, total)];
    let mut found = Vec::new();
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && (&hi - &lo) <= *max_width {
            found.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if sf.sign_at(&mid) == Ordering::Equal {
            found.push(RootInterval { lo: mid.clone(), hi: mid.clone() });
            let left = chain.count_in(&lo, &mid) - 1;
            let right = count - left - 1;
            stack.push((lo, mid.clone(), left));
            // Roots in (mid, hi]; shrink the left end so `mid` is excluded.
            stack.push((mid, hi, right));
            continue;
        }
        let left = chain.count_in(&lo, &mid);
        stack.push((mid.clone(), hi, count - left));
        stack.push((lo, mid, left));
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    out.extend(found);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn product_of_linears(roots: &[i64]) -> IntPoly {
        roots
            .iter()
            .fold(IntPoly::one(), |acc, &r| &acc * &IntPoly::linear_root(r))
    }

    #[test]
    fn sqrt_two() {
        assert_eq!(sturm_distinct_roots_geq(&p(&[-2, 0, 1]), &int(0)), 1);
        assert_eq!(sturm_distinct_roots_geq(&p(&[-2, 0, 1]), &int(-2)), 2);
    }

    #[test]
    fn repeated_root_counted_once() {
        let q = product_of_linears(&[3, 3, -1]);
        assert_eq!(sturm_distinct_roots_geq(&q, &int(0)), 1);
        assert_eq!(sturm_distinct_roots_geq(&q, &int(3)), 1);
        assert_eq!(sturm_distinct_roots_geq(&q, &rat(31, 10)), 0);
        assert_eq!(sturm_distinct_roots_geq(&q, &int(-1)), 2);
    }

    #[test]
    fn isolation_brackets_roots() {
        let q = p(&[-2, 0, 1]);
        let roots = isolate_real_roots(&q, &int(-10), &rat(1, 16));
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.width() <= rat(1, 16));
            assert_ne!(q.sign_at(&r.lo), q.sign_at(&r.hi));
        }
        assert!(roots[0].hi < int(0) && roots[1].lo >= int(1));
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        assert_eq!(sturm_distinct_roots_geq(&p(&[-1]), &int(0)), 0);
        assert!(isolate_real_roots(&p(&[5]), &int(0), &int(1)).is_empty());
    }

    proptest! {
        #[test]
        fn counts_distinct_linear_factor_roots(
            roots in proptest::collection::vec(-12i64..12, 1..6),
            x0 in -13i64..13,
        ) {
            let q = product_of_linears(&roots);
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let expected = distinct.iter().filter(|&&r| r >= x0).count();
            prop_assert_eq!(sturm_distinct_roots_geq(&q, &int(x0)), expected);
            let isolated = isolate_real_roots(&q, &int(x0), &rat(1, 4));
            prop_assert_eq!(isolated.len(), expected);
        }
    }
}

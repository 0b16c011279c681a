use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GammaQuotientDef, RecurrenceDef, SequenceDef, SequenceError, SequenceKind};
use crate::exact::{BigRat, RatFunc};

/// A window of consecutive terms `z_start, z_{start+1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terms {
    pub start: i64,
    pub values: Vec<BigRat>,
}

impl Terms {
    pub fn new(start: i64, values: Vec<BigRat>) -> Self {
        Terms { start, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last index.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    pub fn get(&self, n: i64) -> Option<&BigRat> {
        if n < self.start {
            return None;
        }
        self.values.get((n - self.start) as usize)
    }

    /// Terms from index `from` on, as a new window.
    pub fn from_index(&self, from: i64) -> Terms {
        let skip = (from - self.start).clamp(0, self.values.len() as i64) as usize;
        Terms::new(self.start + skip as i64, self.values[skip..].to_vec())
    }

    /// Terms with indices in `lo..=hi`, clipped to what is available.
    pub fn window(&self, lo: i64, hi: i64) -> Terms {
        let lo = lo.max(self.start);
        let hi = hi.min(self.end() - 1);
        if hi < lo {
            return Terms::new(lo, Vec::new());
        }
        let a = (lo - self.start) as usize;
        let b = (hi - self.start) as usize;
        Terms::new(lo, self.values[a..=b].to_vec())
    }
}

fn coefficient_at(r: &RatFunc, n: i64, which: &'static str) -> Result<BigRat, SequenceError> {
    r.eval_int(n).map_err(|_| SequenceError::CoefficientPole { which, index: n })
}

fn recurrence_terms(rec: &RecurrenceDef, count: usize) -> Result<Vec<BigRat>, SequenceError> {
    let mut z: Vec<BigRat> = rec.initial_terms.iter().take(count).cloned().collect();
    let mut n = rec.first_step();
    while z.len() < count {
        let a = coefficient_at(&rec.a, n, "a")?;
        let b = coefficient_at(&rec.b, n, "b")?;
        let len = z.len();
        let next = a * &z[len - 1] + b * &z[len - 2];
        z.push(next);
        n += 1;
    }
    Ok(z)
}

/// Exact factorial quotients; factorials are built once per call.
fn gamma_quotient_terms(g: &GammaQuotientDef, count: usize) -> Vec<BigRat> {
    let last = count.saturating_sub(1) as u64;
    let top = [g.n0 + last * g.a, g.k0 + last * g.b, g.k0bar + last * g.bbar]
        .into_iter()
        .max()
        .unwrap_or(0) as usize;
    let mut fact = Vec::with_capacity(top + 1);
    fact.push(BigInt::one());
    for k in 1..=top {
        let next = &fact[k - 1] * BigInt::from(k);
        fact.push(next);
    }
    (0..count as u64)
        .map(|i| {
            let num = fact[(g.n0 + i * g.a) as usize].clone();
            let den = &fact[(g.k0 + i * g.b) as usize] * &fact[(g.k0bar + i * g.bbar) as usize];
            BigRat::new(num, den)
        })
        .collect()
}

/// The first `count` terms, starting at the definition's offset.
pub fn generate_terms(def: &SequenceDef, count: usize) -> Result<Vec<BigRat>, SequenceError> {
    let terms = match &def.kind {
        SequenceKind::Recurrence(rec) => recurrence_terms(rec, count)?,
        SequenceKind::GammaQuotient(g) => gamma_quotient_terms(g, count),
        SequenceKind::Explicit { terms } => {
            if terms.len() < count {
                return Err(SequenceError::NotEnoughTerms {
                    available: terms.len(),
                    requested: count,
                });
            }
            terms[..count].to_vec()
        }
    };
    if def.integral {
        if let Some((i, v)) = terms.iter().enumerate().find(|(_, v)| !v.is_integer()) {
            return Err(SequenceError::NonIntegralTerm {
                index: def.offset() + i as i64,
                value: v.clone(),
            });
        }
    }
    Ok(terms)
}

impl SequenceDef {
    /// Terms with indices `offset .. offset + count`.
    pub fn terms(&self, count: usize) -> Result<Terms, SequenceError> {
        Ok(Terms::new(self.offset(), generate_terms(self, count)?))
    }

    /// Terms covering every index `< end`.
    pub fn terms_through(&self, end: i64) -> Result<Terms, SequenceError> {
        let count = (end - self.offset()).max(0) as usize;
        self.terms(count)
    }
}

/// `x_n = z_{n+1} / z_n` for `n = from .. from + count`.
pub fn ratio_terms(def: &SequenceDef, from: i64, count: usize) -> Result<Vec<BigRat>, SequenceError> {
    let terms = def.terms_through(from + count as i64 + 1)?;
    (from..from + count as i64)
        .map(|n| {
            let (Some(z), Some(next)) = (terms.get(n), terms.get(n + 1)) else {
                return Err(SequenceError::InvalidDefinition(format!(
                    "index {n} is before the first term"
                )));
            };
            if z.is_zero() {
                return Err(SequenceError::ZeroTerm { index: n });
            }
            Ok(next / z)
        })
        .collect()
}

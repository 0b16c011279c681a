//! Built-in sequences.

use super::{GammaQuotientDef, RecurrenceDef, SequenceDef, SequenceError, SequenceKind};
use crate::exact::{int, RatFunc};

const NAMES: &[&str] = &[
    "derangement",
    "motzkin",
    "fine",
    "franel",
    "domb",
    "catalan",
    "central-binomial",
    "fuss-catalan:P",
];

/// Names accepted by [`catalog_lookup`]; `P` stands for an integer `>= 2`.
pub fn catalog_names() -> &'static [&'static str] {
    NAMES
}

fn recurrence(name: &str, a: RatFunc, b: RatFunc, init: [i64; 2]) -> SequenceDef {
    let rec = RecurrenceDef::new(a, b, init.iter().map(|&x| int(x)).collect(), 0)
        .expect("two initial terms");
    SequenceDef::new(name, SequenceKind::Recurrence(rec))
        .expect("valid built-in")
        .integral()
}

fn gamma(name: &str, g: GammaQuotientDef) -> SequenceDef {
    SequenceDef::new(name, SequenceKind::GammaQuotient(g))
        .expect("valid built-in")
        .integral()
}

/// `(p i)! / (i! ((p-1) i + 1)!)`.
pub fn fuss_catalan(p: u64) -> Result<SequenceDef, SequenceError> {
    if p < 2 {
        return Err(SequenceError::InvalidDefinition(format!(
            "fuss-catalan needs p >= 2, got {p}"
        )));
    }
    let def = gamma(&format!("fuss-catalan:{p}"), GammaQuotientDef::new(0, 0, 1, p, 1, p - 1)?);
    Ok(match p {
        2 => def.with_oeis("A000108", 0),
        3 => def.with_oeis("A001764", 0),
        _ => def,
    })
}

pub fn catalog_lookup(name: &str) -> Result<SequenceDef, SequenceError> {
    let key = name.trim().to_ascii_lowercase();
    let def = match key.as_str() {
        "derangement" | "derangements" => {
            recurrence("derangement", RatFunc::n(), RatFunc::n(), [1, 0]).with_oeis("A000166", 0)
        }
        "motzkin" => recurrence(
            "motzkin",
            RatFunc::from_i64s(&[3, 2], &[3, 1]),
            RatFunc::from_i64s(&[0, 3], &[3, 1]),
            [1, 1],
        )
        .with_oeis("A001006", 0),
        "fine" => recurrence(
            "fine",
            RatFunc::from_i64s(&[2, 7], &[4, 2]),
            RatFunc::from_i64s(&[1, 2], &[2, 1]),
            [1, 0],
        )
        .with_oeis("A000957", 1),
        "franel" => recurrence(
            "franel",
            RatFunc::from_i64s(&[2, 7, 7], &[1, 2, 1]),
            RatFunc::from_i64s(&[0, 0, 8], &[1, 2, 1]),
            [1, 2],
        )
        .with_oeis("A000172", 0),
        "domb" => recurrence(
            "domb",
            RatFunc::from_i64s(&[4, 18, 30, 20], &[1, 3, 3, 1]),
            RatFunc::from_i64s(&[0, 0, 0, -64], &[1, 3, 3, 1]),
            [1, 4],
        )
        .with_oeis("A002895", 0),
        "catalan" => gamma("catalan", GammaQuotientDef::new(0, 0, 1, 2, 1, 1)?).with_oeis("A000108", 0),
        "central-binomial" => {
            gamma("central-binomial", GammaQuotientDef::new(0, 0, 0, 2, 1, 1)?).with_oeis("A000984", 0)
        }
        other => {
            if let Some(p) = other.strip_prefix("fuss-catalan:") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| SequenceError::UnknownSequence(name.to_string()))?;
                return fuss_catalan(p);
            }
            return Err(SequenceError::UnknownSequence(name.to_string()));
        }
    };
    Ok(def)
}

//! Serde adapters that write rationals as `"p"` or `"p/q"` strings.
//!
//! Use with `#[serde(with = "crate::exact::rat_serde")]` (or the `vec` / `opt`
//! submodules).

use serde::{de::Error, Deserialize, Deserializer, Serializer};

use super::{parse_rat, BigRat};

pub fn serialize<S: Serializer>(x: &BigRat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
    let text = String::deserialize(d)?;
    parse_rat(&text).ok_or_else(|| D::Error::custom(format!("invalid rational {text:?}")))
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[BigRat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rat(t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}"))))
            .collect()
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigRat>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rat(&t).ok_or_else(|| D::Error::custom(format!("invalid rational {t:?}"))))
            .transpose()
    }
}

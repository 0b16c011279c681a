//! JSON documents: sequence definitions, certificates and run reports.

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::certify::{
    builtin_certificate, Certificate, MinusCertificate, PlusCertificate, Theorem, DEFAULT_BASE_WINDOW,
};
use crate::exact::{rat_serde, BigRat, RatFunc};
use crate::sequences::{catalog_lookup, GammaQuotientDef, RecurrenceDef, SequenceDef, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindTag {
    Recurrence,
    GammaQuotient,
    Explicit,
}

/// `{"name", "kind", "a", "b", "initial", "offset", "oeis_id", ...}` with
/// integers as decimal strings. Gamma quotients carry `params`
/// `[n0, k0, k0bar, a, b, bbar]`; explicit sequences carry `terms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub name: String,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<RatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<RatFunc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "rat_serde::vec")]
    pub initial: Vec<BigRat>,
    #[serde(default)]
    pub offset: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<[u64; 6]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "rat_serde::vec")]
    pub terms: Vec<BigRat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oeis_id: Option<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub oeis_index_shift: i64,
    #[serde(default, skip_serializing_if = "is_false")]
    pub integral: bool,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

fn is_false(x: &bool) -> bool {
    !*x
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::InvalidDocument(msg.into())
}

impl SequenceDoc {
    pub fn from_def(def: &SequenceDef) -> Self {
        let mut doc = SequenceDoc {
            name: def.name.clone(),
            kind: KindTag::Explicit,
            a: None,
            b: None,
            initial: Vec::new(),
            offset: 0,
            params: None,
            terms: Vec::new(),
            oeis_id: def.oeis_id.clone(),
            oeis_index_shift: def.oeis_index_shift,
            integral: def.integral,
        };
        match &def.kind {
            SequenceKind::Recurrence(r) => {
                doc.kind = KindTag::Recurrence;
                doc.a = Some(r.a.clone());
                doc.b = Some(r.b.clone());
                doc.initial = r.initial_terms.clone();
                doc.offset = r.offset;
            }
            SequenceKind::GammaQuotient(g) => {
                doc.kind = KindTag::GammaQuotient;
                doc.params = Some([g.n0, g.k0, g.k0bar, g.a, g.b, g.bbar]);
            }
            SequenceKind::Explicit { terms } => doc.terms = terms.clone(),
        }
        doc
    }

    pub fn into_def(self) -> Result<SequenceDef, IoError> {
        let kind = match self.kind {
            KindTag::Recurrence => {
                let a = self.a.ok_or_else(|| invalid("recurrence needs \"a\""))?;
                let b = self.b.ok_or_else(|| invalid("recurrence needs \"b\""))?;
                SequenceKind::Recurrence(RecurrenceDef::new(a, b, self.initial, self.offset)?)
            }
            KindTag::GammaQuotient => {
                let [n0, k0, k0bar, a, b, bbar] = self.params.ok_or_else(|| invalid("gamma-quotient needs \"params\""))?;
                SequenceKind::GammaQuotient(GammaQuotientDef::new(n0, k0, k0bar, a, b, bbar)?)
            }
            KindTag::Explicit => SequenceKind::Explicit { terms: self.terms },
        };
        let mut def = SequenceDef::new(self.name, kind)?;
        if let Some(id) = self.oeis_id {
            def = def.with_oeis(&id, self.oeis_index_shift);
        }
        def.integral = self.integral;
        Ok(def)
    }
}

pub fn parse_sequence_doc(json: &str) -> Result<SequenceDef, IoError> {
    let doc: SequenceDoc = serde_json::from_str(json).map_err(|e| IoError::Json(e.to_string()))?;
    doc.into_def()
}

pub fn sequence_doc_json(def: &SequenceDef) -> String {
    serde_json::to_string_pretty(&SequenceDoc::from_def(def)).expect("serializable")
}

/// A catalog name or an inline definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceRef {
    Name(String),
    Inline(Box<SequenceDoc>),
}

impl SequenceRef {
    pub fn resolve(self) -> Result<SequenceDef, IoError> {
        match self {
            SequenceRef::Name(name) => Ok(catalog_lookup(&name)?),
            SequenceRef::Inline(doc) => doc.into_def(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub sequence: SequenceRef,
    pub theorem: Theorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<RatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<RatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<RatFunc>,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(default = "default_window")]
    pub base_window: i64,
}

fn default_window() -> i64 {
    DEFAULT_BASE_WINDOW
}

impl CertificateDoc {
    pub fn into_certificate(self) -> Result<Certificate, IoError> {
        let seq = self.sequence.resolve()?;
        Ok(match self.theorem {
            Theorem::Plus => Certificate::Plus(PlusCertificate {
                seq,
                lambda: self.lambda.ok_or_else(|| invalid("theorem \"plus\" needs \"lambda\""))?,
                n: self.n,
                base_window: self.base_window,
            }),
            Theorem::Minus => Certificate::Minus(MinusCertificate {
                seq,
                r: self.r.ok_or_else(|| invalid("theorem \"minus\" needs \"r\""))?,
                s: self.s.ok_or_else(|| invalid("theorem \"minus\" needs \"s\""))?,
                n: self.n,
                base_window: self.base_window,
            }),
        })
    }

    pub fn from_certificate(cert: &Certificate) -> Self {
        let inline = |seq: &SequenceDef| match catalog_lookup(&seq.name) {
            Ok(def) if def == *seq => SequenceRef::Name(seq.name.clone()),
            _ => SequenceRef::Inline(Box::new(SequenceDoc::from_def(seq))),
        };
        match cert {
            Certificate::Plus(c) => CertificateDoc {
                sequence: inline(&c.seq),
                theorem: Theorem::Plus,
                lambda: Some(c.lambda.clone()),
                r: None,
                s: None,
                n: c.n,
                base_window: c.base_window,
            },
            Certificate::Minus(c) => CertificateDoc {
                sequence: inline(&c.seq),
                theorem: Theorem::Minus,
                lambda: None,
                r: Some(c.r.clone()),
                s: Some(c.s.clone()),
                n: c.n,
                base_window: c.base_window,
            },
        }
    }
}

pub fn parse_certificate_doc(json: &str) -> Result<Certificate, IoError> {
    let doc: CertificateDoc = serde_json::from_str(json).map_err(|e| IoError::Json(e.to_string()))?;
    doc.into_certificate()
}

/// JSON of the built-in certificate for a catalog sequence.
pub fn builtin_certificate_json(name: &str) -> Result<String, IoError> {
    let cert = builtin_certificate(name)?;
    Ok(serde_json::to_string_pretty(&CertificateDoc::from_certificate(&cert)).expect("serializable"))
}

/// Envelope for every command's output; deterministic except `timing_ms`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: serde_json::Value,
    pub outcome: serde_json::Value,
    pub timing_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::catalog_names;

    #[test]
    fn catalog_round_trip() {
        for name in catalog_names().iter().filter(|n| !n.ends_with(":P")) {
            let def = catalog_lookup(name).unwrap();
            let json = sequence_doc_json(&def);
            assert_eq!(parse_sequence_doc(&json).unwrap(), def, "{name}");
            let again = sequence_doc_json(&parse_sequence_doc(&json).unwrap());
            assert_eq!(json, again);
        }
    }

    #[test]
    fn documented_schema() {
        let json = r#"{"name": "derangement", "kind": "recurrence",
            "a": {"num": ["0", "1"], "den": ["1"]}, "b": {"num": ["0", "1"]},
            "initial": ["1", "0"], "offset": 0, "oeis_id": "A000166"}"#;
        let def = parse_sequence_doc(json).unwrap();
        assert_eq!(def.terms(5).unwrap().values, catalog_lookup("derangement").unwrap().terms(5).unwrap().values);
        let explicit = r#"{"name": "e", "kind": "explicit", "terms": ["1", "2", "3", "4", "1/2"]}"#;
        assert_eq!(parse_sequence_doc(explicit).unwrap().terms(5).unwrap().values[4], BigRat::new(1.into(), 2.into()));
        assert!(parse_sequence_doc(r#"{"name": "x", "kind": "recurrence"}"#).is_err());
        assert!(parse_sequence_doc(r#"{"name": "x", "kind": "explicit", "terms": ["1"], "bogus": 1}"#).is_err());
        assert!(parse_sequence_doc(r#"{"name": "x", "kind": "recurrence", "a": {"num": ["1"], "den": []}, "b": {"num": ["1"]}, "initial": ["1", "1"]}"#).is_err());
    }

    #[test]
    fn certificates_round_trip() {
        for name in crate::certify::builtin_names() {
            let json = builtin_certificate_json(name).unwrap();
            let cert = parse_certificate_doc(&json).unwrap();
            assert_eq!(cert, builtin_certificate(name).unwrap());
        }
        let json = r#"{"sequence": "motzkin", "theorem": "plus", "lambda": {"num": ["-8", "27", "54"], "den": ["0", "36", "18"]}, "N": 1}"#;
        let Certificate::Plus(c) = parse_certificate_doc(json).unwrap() else { panic!() };
        assert_eq!(c.base_window, DEFAULT_BASE_WINDOW);
        assert!(parse_certificate_doc(r#"{"sequence": "domb", "theorem": "minus", "r": {"num": ["15"]}, "N": 181}"#).is_err());
        assert!(parse_certificate_doc(r#"{"sequence": "nope", "theorem": "plus", "lambda": {"num": ["1"]}, "N": 1}"#).is_err());
    }
}

//! The five certificates for the catalog sequences.

use super::{Certificate, CertifyError, MinusCertificate, PlusCertificate, DEFAULT_BASE_WINDOW};
use crate::exact::RatFunc;
use crate::sequences::catalog_lookup;

const NAMES: &[&str] = &["derangement", "motzkin", "fine", "franel", "domb"];

pub fn builtin_names() -> &'static [&'static str] {
    NAMES
}

fn plus(name: &str, lambda: RatFunc) -> Result<Certificate, CertifyError> {
    let seq = catalog_lookup(name).map_err(|_| CertifyError::UnknownBuiltin(name.into()))?;
    Ok(Certificate::Plus(PlusCertificate { seq, lambda, n: 1, base_window: DEFAULT_BASE_WINDOW }))
}

pub fn builtin_certificate(name: &str) -> Result<Certificate, CertifyError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "derangement" | "derangements" => plus("derangement", RatFunc::n()),
        // (6n^2 + 3n - 8/9) / (2n(n+2)) with the fraction cleared
        "motzkin" => plus("motzkin", RatFunc::from_i64s(&[-8, 27, 54], &[0, 36, 18])),
        "fine" => plus("fine", RatFunc::from_i64s(&[6, 4], &[3, 1])),
        "franel" => plus("franel", RatFunc::from_i64s(&[1, 8, 8], &[1, 2, 1])),
        "domb" => {
            let seq = catalog_lookup("domb").expect("catalog entry");
            Ok(Certificate::Minus(MinusCertificate {
                seq,
                r: RatFunc::from_int(15),
                s: RatFunc::from_i64s(&[-2, 12, -24, 16], &[0, 0, 0, 1]),
                n: 181,
                // The base check then covers centers 2..=181.
                base_window: 0,
            }))
        }
        _ => Err(CertifyError::UnknownBuiltin(name.into())),
    }
}

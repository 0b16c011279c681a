//! On-disk term cache: one file per sequence name, a header carrying the
//! SHA-256 of the canonical definition, then one term per line.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::doc::SequenceDoc;
use super::IoError;
use crate::exact::{parse_rat, BigRat};
use crate::sequences::{RecurrenceDef, SequenceDef, SequenceKind};

const MAGIC: &str = "# ratiolog-cache v1";

/// Hex SHA-256 of the definition's canonical JSON document.
pub fn definition_hash(def: &SequenceDef) -> String {
    let json = serde_json::to_string(&SequenceDoc::from_def(def)).expect("serializable");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn cache_path(def: &SequenceDef, dir: &Path) -> PathBuf {
    let safe: String = def
        .name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    dir.join(format!("{safe}.terms"))
}

fn io_err(path: &Path, e: std::io::Error) -> IoError {
    IoError::Io(format!("{}: {e}", path.display()))
}

/// Writes `terms` (starting at the definition's offset) atomically.
pub fn cache_terms(def: &SequenceDef, terms: &[BigRat], dir: &Path) -> Result<PathBuf, IoError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = cache_path(def, dir);
    let mut body = format!("{MAGIC} sha256={} count={}\n", definition_hash(def), terms.len());
    for t in terms {
        body.push_str(&t.to_string());
        body.push('\n');
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, body).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
    Ok(path)
}

fn corrupt(line: usize, reason: &str) -> IoError {
    IoError::CorruptCache { line, reason: reason.into() }
}

fn read_cache(def: &SequenceDef, text: &str) -> Result<Vec<BigRat>, IoError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| corrupt(1, "empty file"))?;
    let rest = header.strip_prefix(MAGIC).ok_or_else(|| corrupt(1, "missing header"))?;
    let mut hash = None;
    let mut count = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("sha256", h)) => hash = Some(h.to_string()),
            Some(("count", c)) => count = c.parse::<usize>().ok(),
            _ => return Err(corrupt(1, "unknown header field")),
        }
    }
    let (Some(hash), Some(count)) = (hash, count) else {
        return Err(corrupt(1, "incomplete header"));
    };
    let expected = definition_hash(def);
    if hash != expected {
        return Err(IoError::HashMismatch { expected, found: hash });
    }
    let terms = lines
        .enumerate()
        .map(|(i, l)| parse_rat(l).ok_or_else(|| corrupt(i + 2, "not a rational")))
        .collect::<Result<Vec<_>, _>>()?;
    if terms.len() != count {
        return Err(corrupt(count + 2, "term count does not match header"));
    }
    Ok(terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheLoad {
    pub terms: Vec<BigRat>,
    pub from_cache: usize,
    pub generated: usize,
}

/// Terms after a cached prefix; recurrences resume from the last two cached terms.
fn extend(def: &SequenceDef, cached: &[BigRat], count: usize) -> Result<Vec<BigRat>, IoError> {
    let len = cached.len();
    if let (Some(rec), true) = (def.recurrence(), len >= 2) {
        let resumed = RecurrenceDef::new(rec.a.clone(), rec.b.clone(), cached[len - 2..].to_vec(), rec.offset + len as i64 - 2)?;
        let mut tail_def = def.clone();
        tail_def.kind = SequenceKind::Recurrence(resumed);
        return Ok(tail_def.terms(count - len + 2)?.values.split_off(2));
    }
    Ok(def.terms(count)?.values.split_off(len))
}

/// The first `count` terms, reading the cache and generating only what is missing.
pub fn load_cached(def: &SequenceDef, count: usize, dir: &Path) -> Result<CacheLoad, IoError> {
    let path = cache_path(def, dir);
    let mut cached = match fs::read_to_string(&path) {
        Ok(text) => read_cache(def, &text)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(io_err(&path, e)),
    };
    if cached.len() >= count {
        cached.truncate(count);
        return Ok(CacheLoad { terms: cached, from_cache: count, generated: 0 });
    }
    let from_cache = cached.len();
    let tail = extend(def, &cached, count)?;
    cached.extend(tail);
    Ok(CacheLoad { terms: cached, from_cache, generated: count - from_cache })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RatFunc;
    use crate::sequences::catalog_lookup;

    #[test]
    fn store_reload_extend() {
        let dir = tempfile::tempdir().unwrap();
        let domb = catalog_lookup("domb").unwrap();
        let first = domb.terms(100).unwrap().values;
        cache_terms(&domb, &first, dir.path()).unwrap();
        let load = load_cached(&domb, 120, dir.path()).unwrap();
        assert_eq!((load.from_cache, load.generated), (100, 20));
        assert_eq!(load.terms, domb.terms(120).unwrap().values);
        let load = load_cached(&domb, 50, dir.path()).unwrap();
        assert_eq!((load.from_cache, load.generated), (50, 0));
    }

    #[test]
    fn stale_and_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let domb = catalog_lookup("domb").unwrap();
        cache_terms(&domb, &domb.terms(10).unwrap().values, dir.path()).unwrap();
        let SequenceKind::Recurrence(r) = &domb.kind else { panic!() };
        let changed = RecurrenceDef::new(r.a.clone(), RatFunc::zero(), r.initial_terms.clone(), 0).unwrap();
        let mut other = domb.clone();
        other.kind = SequenceKind::Recurrence(changed);
        assert!(matches!(load_cached(&other, 5, dir.path()), Err(IoError::HashMismatch { .. })));

        let path = cache_path(&domb, dir.path());
        let text = fs::read_to_string(&path).unwrap().replace("2716", "27x6");
        fs::write(&path, text).unwrap();
        assert!(matches!(load_cached(&domb, 5, dir.path()), Err(IoError::CorruptCache { line: 6, .. })));
        fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(load_cached(&domb, 5, dir.path()), Err(IoError::CorruptCache { line: 1, .. })));
    }

    #[test]
    fn empty_dir_generates_everything() {
        let dir = tempfile::tempdir().unwrap();
        let m = catalog_lookup("motzkin").unwrap();
        let load = load_cached(&m, 30, dir.path()).unwrap();
        assert_eq!((load.from_cache, load.generated), (0, 30));
        assert_eq!(load.terms, m.terms(30).unwrap().values);
    }
}

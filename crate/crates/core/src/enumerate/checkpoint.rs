//! Plain-text checkpoints of an enumeration store.
//!
//! ```text
//! ATOROv1 max_v=9 mode=mod-reflection
//! L 0 1
//! 010000000001
//! ...
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::canon::{CanonicalCode, Chirality};
use crate::error::EnumerateError;

use super::{Entry, EnumerationStore};

pub fn write_checkpoint(store: &EnumerationStore) -> String {
    let max_v = store.max_v().map_or(String::from("-"), |m| m.to_string());
    let mut out = format!("ATOROv1 max_v={max_v} mode={}\n", store.chirality.as_str());
    for (v, codes) in &store.levels {
        writeln!(out, "L {v} {}", codes.len()).unwrap();
        for c in codes {
            writeln!(out, "{}", c.to_hex()).unwrap();
        }
    }
    out
}

/// Loads a checkpoint and rebuilds the per-graph records, re-deriving the
/// surgery predecessors of every level from the level below.
pub fn read_checkpoint(text: &str) -> Result<EnumerationStore, EnumerateError> {
    let bad = |line: usize, m: &str| EnumerateError::CorruptCheckpoint(format!("line {line}: {m}"));
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "ATOROv1" {
        return Err(bad(1, "bad header"));
    }
    let max_v: Option<usize> = match fields[1].strip_prefix("max_v=") {
        Some("-") => None,
        Some(n) => Some(n.parse().map_err(|_| bad(1, "bad max_v"))?),
        None => return Err(bad(1, "missing max_v")),
    };
    let chirality = fields[2]
        .strip_prefix("mode=")
        .and_then(Chirality::parse)
        .ok_or_else(|| bad(1, "bad mode"))?;

    let mut levels: BTreeMap<usize, BTreeSet<CanonicalCode>> = BTreeMap::new();
    let mut current: Option<(usize, usize, usize)> = None;
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("L ") {
            if let Some((lno, v, want)) = current {
                if levels[&v].len() != want {
                    return Err(bad(lno, "level count does not match its codes"));
                }
            }
            let (a, b) = rest.split_once(' ').ok_or_else(|| bad(no, "bad level line"))?;
            let v: usize = a.parse().map_err(|_| bad(no, "bad level"))?;
            let want: usize = b.trim().parse().map_err(|_| bad(no, "bad count"))?;
            if v != levels.len() {
                return Err(bad(no, "levels must be consecutive from 0"));
            }
            levels.insert(v, BTreeSet::new());
            current = Some((no, v, want));
            continue;
        }
        let (_, v, _) = current.ok_or_else(|| bad(no, "code before level line"))?;
        let code = CanonicalCode::from_hex(line).ok_or_else(|| bad(no, "bad code"))?;
        if code.vertex_count() != v || code.mode() != chirality {
            return Err(bad(no, "code does not belong to this level"));
        }
        if !levels.get_mut(&v).unwrap().insert(code) {
            return Err(bad(no, "duplicate code"));
        }
    }
    if let Some((lno, v, want)) = current {
        if levels[&v].len() != want {
            return Err(bad(lno, "level count does not match its codes"));
        }
    }
    if levels.keys().next_back().copied() != max_v {
        return Err(bad(1, "max_v does not match the levels present"));
    }

    let mut store = EnumerationStore::new(chirality);
    for (&v, codes) in &levels {
        let mut fresh = BTreeMap::new();
        for c in codes {
            let map = c.to_map().map_err(|e| EnumerateError::CorruptCheckpoint(e.to_string()))?;
            fresh.insert(c.clone(), Entry::new(map, c, chirality));
        }
        for (parent, code, m, _) in store.children(v) {
            let e = fresh
                .get_mut(&code)
                .ok_or_else(|| EnumerateError::CorruptCheckpoint(format!("level {v} is missing {code}")))?;
            e.predecessors.push((parent, m));
        }
        store.levels.insert(v, codes.clone());
        store.meta.extend(fresh);
    }
    Ok(store)
}

/// Continues an enumeration from a checkpoint up to `max_v`.
pub fn resume(text: &str, max_v: usize, limit: usize) -> Result<EnumerationStore, EnumerateError> {
    let mut store = read_checkpoint(text)?;
    if let Some(have) = store.max_v() {
        if have > max_v {
            store.levels.retain(|&v, _| v <= max_v);
            store.meta.retain(|c, _| c.vertex_count() <= max_v);
        }
    }
    store.extend_to(max_v, limit)?;
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_atoroidal, DEFAULT_LIMIT};
    use super::*;

    #[test]
    fn round_trip_and_resume() {
        let s7 = enumerate_atoroidal(7).unwrap();
        let text = write_checkpoint(&s7);
        assert!(text.starts_with("ATOROv1 max_v=7 mode=mod-reflection\nL 0 1\n010000000001\n"));
        assert_eq!(read_checkpoint(&text).unwrap(), s7);
        let s9 = enumerate_atoroidal(9).unwrap();
        assert_eq!(resume(&text, 9, DEFAULT_LIMIT).unwrap(), s9);
        assert_eq!(write_checkpoint(&resume(&text, 9, DEFAULT_LIMIT).unwrap()), write_checkpoint(&s9));
    }

    #[test]
    fn corrupt_inputs() {
        let text = write_checkpoint(&enumerate_atoroidal(6).unwrap());
        for broken in [
            text.replace("ATOROv1", "ATOROv2"),
            text.replace("L 6 1", "L 6 2"),
            text.replace("L 3 1", "L 4 1"),
            text.replace("010000000001", "01000000000"),
        ] {
            assert!(matches!(read_checkpoint(&broken), Err(EnumerateError::CorruptCheckpoint(_))), "{broken}");
        }
    }
}

//! Plain-text persistence of the memo table.
//!
//! ```text
//! #rootstack-gw-cache v1
//! 1\t4\t7\t0\t4\t416
//! ```
//!
//! One `delta d n2 n3 n4 value` line per entry, tab separated, LF endings,
//! sorted by key. Values use the canonical `p/q` or `p` form.

use std::collections::HashSet;

use thiserror::Error;

use crate::dimension::admissible_counts;
use crate::error::EngineError;
use crate::key::InvariantKey;
use crate::memo::MemoStore;
use crate::rational::{parse_canonical, render, Rational};

pub const CACHE_HEADER: &str = "#rootstack-gw-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("cache disagrees with the store: {0}")]
    Conflict(EngineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub delta: u32,
    pub key: InvariantKey,
    pub value: Rational,
}

pub fn render_cache(entries: &[CacheEntry]) -> String {
    let mut sorted: Vec<&CacheEntry> = entries.iter().collect();
    sorted.sort_by_key(|e| (e.delta, e.key));
    let mut out = String::from(CACHE_HEADER);
    out.push('\n');
    for e in sorted {
        let k = e.key;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            e.delta,
            k.d,
            k.n2,
            k.n3,
            k.n4,
            render(&e.value)
        ));
    }
    out
}

pub fn export_store(store: &MemoStore) -> String {
    let entries: Vec<CacheEntry> = store
        .sorted_entries()
        .into_iter()
        .map(|(delta, key, value)| CacheEntry { delta, key, value })
        .collect();
    render_cache(&entries)
}

pub fn parse_cache(text: &str) -> Result<Vec<CacheEntry>, CacheError> {
    let malformed = |line: usize, reason: String| CacheError::Malformed { line, reason };
    if text.contains('\r') {
        return Err(malformed(1, "CR characters are not allowed; use LF line endings".into()));
    }
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| malformed(1, "file must end with a newline".into()))?;
    let mut lines = body.split('\n');
    if lines.next() != Some(CACHE_HEADER) {
        return Err(malformed(1, format!("expected header {CACHE_HEADER:?}")));
    }

    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(malformed(lineno, format!("expected 6 tab-separated fields, got {}", fields.len())));
        }
        let mut nums = [0u32; 5];
        for (slot, field) in nums.iter_mut().zip(&fields[..5]) {
            let canonical = !field.is_empty()
                && field.bytes().all(|b| b.is_ascii_digit())
                && (field.len() == 1 || !field.starts_with('0'));
            *slot = field
                .parse()
                .ok()
                .filter(|_| canonical)
                .ok_or_else(|| malformed(lineno, format!("bad integer field {field:?}")))?;
        }
        let [delta, d, n2, n3, n4] = nums;
        if delta == 0 || d == 0 {
            return Err(malformed(lineno, "delta and d must be positive".into()));
        }
        if !admissible_counts(delta, d, [n2, n3, n4]) {
            return Err(malformed(lineno, "key fails the dimension constraint".into()));
        }
        let value = parse_canonical(fields[5]).map_err(|r| malformed(lineno, r))?;
        let key = InvariantKey { d, n2, n3, n4 };
        if !seen.insert((delta, key)) {
            return Err(malformed(lineno, format!("duplicate entry for delta={delta} {key}")));
        }
        entries.push(CacheEntry { delta, key, value });
    }
    Ok(entries)
}

/// Validate the whole file, then seed the store. Returns the entry count.
/// A value disagreeing with one already in the store is a conflict and is
/// never written.
pub fn import_into(store: &MemoStore, text: &str) -> Result<usize, CacheError> {
    let entries = parse_cache(text)?;
    for e in &entries {
        if let Some(stored) = store.peek(e.delta, &e.key) {
            if stored != e.value {
                return Err(CacheError::Conflict(EngineError::MemoConflict {
                    delta: e.delta,
                    key: e.key,
                    stored: render(&stored),
                    offered: render(&e.value),
                }));
            }
        }
    }
    for e in &entries {
        store
            .insert(e.delta, e.key, e.value.clone())
            .map_err(CacheError::Conflict)?;
    }
    Ok(entries.len())
}

//! Shared memo table for computed invariants.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use crate::error::{EngineError, Result};
use crate::key::InvariantKey;
use crate::rational::{render, Rational};

/// Map from `(delta, key)` to the exact invariant value.
///
/// Values are pure functions of their key, so concurrent writers for the same
/// key always agree; a disagreeing write is reported as a conflict and the
/// stored value is kept.
#[derive(Debug, Default)]
pub struct MemoStore {
    entries: RwLock<HashMap<(u32, InvariantKey), Rational>>,
    hits: AtomicU64,
    misses: AtomicU64,
    longest_chain: AtomicU64,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, delta: u32, key: &InvariantKey) -> Option<Rational> {
        let found = self
            .entries
            .read()
            .expect("memo lock poisoned")
            .get(&(delta, *key))
            .cloned();
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    /// Lookup that leaves the hit and miss counters alone.
    pub(crate) fn peek(&self, delta: u32, key: &InvariantKey) -> Option<Rational> {
        self.entries.read().expect("memo lock poisoned").get(&(delta, *key)).cloned()
    }

    /// Idempotent insert. Rewriting a key with a different value is an error.
    pub fn insert(&self, delta: u32, key: InvariantKey, value: Rational) -> Result<()> {
        let mut entries = self.entries.write().expect("memo lock poisoned");
        match entries.get(&(delta, key)) {
            Some(stored) if *stored != value => Err(EngineError::MemoConflict {
                delta,
                key,
                stored: render(stored),
                offered: render(&value),
            }),
            Some(_) => Ok(()),
            None => {
                entries.insert((delta, key), value);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries sorted by `(delta, d, n2, n3, n4)`.
    pub fn sorted_entries(&self) -> Vec<(u32, InvariantKey, Rational)> {
        let entries = self.entries.read().expect("memo lock poisoned");
        let mut out: Vec<_> = entries
            .iter()
            .map(|((delta, key), v)| (*delta, *key, v.clone()))
            .collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Longest same-degree chain any evaluation against this store has walked.
    pub fn longest_chain(&self) -> u64 {
        self.longest_chain.load(Ordering::Relaxed)
    }

    pub(crate) fn note_chain(&self, length: u64) {
        self.longest_chain.fetch_max(length, Ordering::Relaxed);
    }
}

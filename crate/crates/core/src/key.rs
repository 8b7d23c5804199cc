//! Index types for invariants.

use std::fmt;

use crate::error::{EngineError, Result};

/// The degree of the smooth plane curve along which the square root is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeometryConfig {
    delta: u32,
}

impl GeometryConfig {
    pub fn new(delta: u32) -> Result<Self> {
        if delta == 0 {
            return Err(EngineError::InvalidInput(
                "curve degree delta must be at least 1".into(),
            ));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }
}

/// `I_d(n2, n3, n4)`: a degree `d >= 1` invariant with `n2` point insertions
/// in the plane, `n3` copies of the unit class of the curve and `n4` points on
/// the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantKey {
    pub d: u32,
    pub n2: u32,
    pub n3: u32,
    pub n4: u32,
}

impl InvariantKey {
    pub fn new(d: u32, n2: u32, n3: u32, n4: u32) -> Result<Self> {
        if d == 0 {
            return Err(EngineError::InvalidInput(
                "core invariants need degree d >= 1".into(),
            ));
        }
        Ok(Self { d, n2, n3, n4 })
    }

    pub fn counts(&self) -> [u32; 3] {
        [self.n2, self.n3, self.n4]
    }

    pub(crate) fn from_parts(d: u32, n: [u32; 3]) -> Self {
        debug_assert!(d >= 1);
        Self {
            d,
            n2: n[0],
            n3: n[1],
            n4: n[2],
        }
    }

    /// Shift the insertion counts, `None` if any count would go negative.
    pub(crate) fn shifted(&self, dn2: i64, dn3: i64, dn4: i64) -> Option<Self> {
        let shift = |n: u32, dn: i64| u32::try_from(n as i64 + dn).ok();
        Some(Self {
            d: self.d,
            n2: shift(self.n2, dn2)?,
            n3: shift(self.n3, dn3)?,
            n4: shift(self.n4, dn4)?,
        })
    }
}

impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}({},{},{})", self.d, self.n2, self.n3, self.n4)
    }
}

/// An invariant with arbitrary insertions `T0^n0 ... T4^n4` in any degree,
/// including the degree zero invariants that carry the classical product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralKey {
    pub d: u32,
    pub n: [u32; 5],
}

impl GeneralKey {
    pub fn new(d: u32, n: [u32; 5]) -> Result<Self> {
        let key = Self { d, n };
        if d == 0 && key.total_insertions() < 3 {
            return Err(EngineError::InvalidInput(format!(
                "degree 0 invariants need at least 3 insertions, got {}",
                key.total_insertions()
            )));
        }
        Ok(key)
    }

    pub fn total_insertions(&self) -> u64 {
        self.n.iter().map(|&c| c as u64).sum()
    }
}

impl fmt::Display for GeneralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.n;
        write!(f, "I_{}(T^({a},{b},{c},{d},{e}))", self.d)
    }
}

/// One term of a quadratic split sum: `d1 + d2 = d` and `p + q = target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitTerm {
    pub d1: u32,
    pub d2: u32,
    pub p: [u32; 3],
    pub q: [u32; 3],
}

impl SplitTerm {
    pub fn left(&self) -> InvariantKey {
        InvariantKey::from_parts(self.d1, self.p)
    }

    pub fn right(&self) -> InvariantKey {
        InvariantKey::from_parts(self.d2, self.q)
    }
}

/// Every way to split degree `d` into two positive parts and `target` into
/// two nonnegative triples. Empty when `d < 2`.
pub fn split_terms(d: u32, target: [u32; 3]) -> impl Iterator<Item = SplitTerm> {
    (1..d).flat_map(move |d1| {
        (0..=target[0]).flat_map(move |p2| {
            (0..=target[1]).flat_map(move |p3| {
                (0..=target[2]).map(move |p4| {
                    let p = [p2, p3, p4];
                    SplitTerm {
                        d1,
                        d2: d - d1,
                        p,
                        q: [target[0] - p2, target[1] - p3, target[2] - p4],
                    }
                })
            })
        })
    })
}

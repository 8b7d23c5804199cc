//! Reduction of arbitrary insertions `T0..T4` to the core invariants.

use num_traits::{Pow, Zero};

use crate::engine::invariant;
use crate::error::Result;
use crate::key::{GeneralKey, GeometryConfig, InvariantKey};
use crate::memo::MemoStore;
use crate::rational::{frac, int, Rational};

/// The four-point degree zero invariant `I_0(T3^3 T4)`.
pub fn lambda() -> Rational {
    frac(-1, 4)
}

/// Degree zero three-point invariants `I_0(Ti Tj Tk)`, symmetric in the indices.
pub fn three_point(cfg: GeometryConfig, indices: [usize; 3]) -> Rational {
    let mut sorted = indices;
    sorted.sort_unstable();
    match sorted {
        [0, 0, 2] | [0, 1, 1] => int(1),
        [1, 3, 3] => frac(cfg.delta() as i64, 2),
        [0, 3, 4] => frac(1, 2),
        _ => Rational::zero(),
    }
}

pub fn general_invariant(store: &MemoStore, cfg: GeometryConfig, key: GeneralKey) -> Result<Rational> {
    // re-validate: fields are public
    let key = GeneralKey::new(key.d, key.n)?;
    let [n0, n1, n2, n3, n4] = key.n;
    let total = key.total_insertions();
    let stable_forgetful = key.d > 0 || total > 3;

    if n0 > 0 && stable_forgetful {
        return Ok(Rational::zero());
    }
    if n1 > 0 && stable_forgetful {
        if key.d == 0 {
            return Ok(Rational::zero());
        }
        let reduced = GeneralKey::new(key.d, [n0, 0, n2, n3, n4])?;
        let factor = Rational::from_integer(num_bigint::BigInt::from(key.d).pow(n1));
        return Ok(factor * general_invariant(store, cfg, reduced)?);
    }
    if key.d == 0 {
        if total == 3 {
            let mut indices = Vec::with_capacity(3);
            for (i, &c) in key.n.iter().enumerate() {
                indices.extend(std::iter::repeat_n(i, c as usize));
            }
            return Ok(three_point(cfg, [indices[0], indices[1], indices[2]]));
        }
        if n2 > 0 {
            return Ok(Rational::zero());
        }
        return Ok(if (n3, n4) == (3, 1) {
            lambda()
        } else {
            Rational::zero()
        });
    }
    invariant(store, cfg, InvariantKey::new(key.d, n2, n3, n4)?)
}

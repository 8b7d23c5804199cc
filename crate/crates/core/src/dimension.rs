//! Dimension constraint and the termination bound of the algorithm.

use crate::key::{GeometryConfig, InvariantKey};
use crate::rational::{frac, Rational};

/// Expected dimension `3d - d*delta/2 + (n3 + n4)/2 + n2 - 1` of the moduli
/// stack of twisted stable maps with the given contact data.
pub fn expected_dimension(cfg: GeometryConfig, key: InvariantKey) -> Rational {
    let d = key.d as i64;
    let delta = cfg.delta() as i64;
    let twice = 6 * d - d * delta + key.n3 as i64 + key.n4 as i64 + 2 * key.n2 as i64 - 2;
    frac(twice, 2)
}

/// Whether the expected dimension equals the total codimension `2*n2 + n4`
/// of the insertions. Invariants failing this vanish.
pub fn dimension_admissible(cfg: GeometryConfig, key: InvariantKey) -> bool {
    admissible_counts(cfg.delta(), key.d, [key.n2, key.n3, key.n4])
}

#[inline]
pub(crate) fn admissible_counts(delta: u32, d: u32, n: [u32; 3]) -> bool {
    let d = d as i64;
    let lhs = d * delta as i64 + n[2] as i64 - n[1] as i64;
    lhs.rem_euclid(2) == 0 && 3 * d - 1 == lhs / 2 + n[0] as i64
}

/// The unique `n2` making `(n2, n3, n4)` admissible in degree `d`, if any.
pub fn admissible_n2(cfg: GeometryConfig, d: u32, n3: u32, n4: u32) -> Option<u32> {
    let twice = 2 * (3 * d as i64 - 1) - (d as i64 * cfg.delta() as i64 + n4 as i64 - n3 as i64);
    if twice < 0 || twice % 2 != 0 {
        return None;
    }
    u32::try_from(twice / 2).ok()
}

/// Upper bound on the number of same-degree moves the algorithm can make
/// starting from `(n3, n4)`:
/// `ceil(max(0, [n4 - n3 + 8 - (6 - delta) d]/2 + n4 + max(0, 10 - (6 - delta) d)))`.
pub fn recursion_depth_bound(cfg: GeometryConfig, d: u32, n3: u32, n4: u32) -> u64 {
    let slope = (6 - cfg.delta() as i64) * d as i64;
    let (n3, n4) = (n3 as i64, n4 as i64);
    // twice the real-valued bound, so the ceiling stays in integers
    let twice = (n4 - n3 + 8 - slope) + 2 * n4 + 2 * (10 - slope).max(0);
    if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cfg(delta: u32) -> GeometryConfig {
        GeometryConfig::new(delta).unwrap()
    }

    fn key(d: u32, n2: u32, n3: u32, n4: u32) -> InvariantKey {
        InvariantKey::new(d, n2, n3, n4).unwrap()
    }

    #[test]
    fn expected_dimension_values() {
        // 3*4 - 2 + 2 + 7 - 1 equals the codimension 2*7 + 4
        assert_eq!(expected_dimension(cfg(1), key(4, 7, 0, 4)), int(18));
        assert_eq!(expected_dimension(cfg(3), key(1, 2, 3, 0)), int(4));
        assert_eq!(expected_dimension(cfg(1), key(1, 0, 0, 2)), frac(5, 2));
    }

    #[test]
    fn admissibility() {
        assert!(dimension_admissible(cfg(1), key(4, 7, 0, 4)));
        assert!(dimension_admissible(cfg(3), key(1, 2, 3, 0)));
        assert!(!dimension_admissible(cfg(1), key(1, 0, 0, 2)));
        assert!(!dimension_admissible(cfg(2), key(1, 0, 5, 0)));
    }

    #[test]
    fn admissible_n2_agrees_with_predicate() {
        for delta in 1..=6 {
            for d in 1..=4 {
                for n3 in 0..=8 {
                    for n4 in 0..=12 {
                        let found = admissible_n2(cfg(delta), d, n3, n4);
                        for n2 in 0..=14 {
                            let adm = dimension_admissible(cfg(delta), key(d, n2, n3, n4));
                            assert_eq!(adm, found == Some(n2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn depth_bound_examples() {
        assert_eq!(recursion_depth_bound(cfg(1), 1, 0, 3), 11);
        assert_eq!(recursion_depth_bound(cfg(6), 2, 0, 0), 14);
        assert_eq!(recursion_depth_bound(cfg(1), 4, 0, 4), 0);
        // half-integer value rounds up: (1 - 0 + 8 - 5)/2 + 1 + 5 = 8
        assert_eq!(recursion_depth_bound(cfg(1), 1, 0, 1), 8);
        assert_eq!(recursion_depth_bound(cfg(1), 1, 1, 0), 6);
    }
}

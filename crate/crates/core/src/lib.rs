//! Genus zero Gromov-Witten invariants of the square root stack of the
//! projective plane along a smooth curve `D` of degree `delta`.
//!
//! Classes: `T0` unit and `T1` hyperplane and `T2` point of the plane, `T3`
//! unit of `D`, `T4` point of `D`. Every invariant is an exact rational.

pub mod cache;
pub mod dimension;
pub mod engine;
pub mod error;
pub mod general;
pub mod key;
pub mod memo;
pub mod potential;
pub mod rational;
pub mod series;
pub mod verify;

pub use dimension::{admissible_n2, dimension_admissible, expected_dimension, recursion_depth_bound};
pub use engine::{
    invariant, recursion1_value, recursion2_value, recursion3_value, recursion4_value,
    recursion_terms, Recursion, RecursionTerms,
};
pub use error::{EngineError, Result};
pub use general::{general_invariant, lambda, three_point};
pub use key::{split_terms, GeneralKey, GeometryConfig, InvariantKey, SplitTerm};
pub use memo::MemoStore;
pub use rational::{binomial, parse_canonical, render, Rational};

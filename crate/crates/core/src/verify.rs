//! Named verification suites over the engine and the quantum product.
//!
//! Every comparison is exact equality of rationals.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rayon::prelude::*;

use crate::dimension::{admissible_n2, dimension_admissible};
use crate::engine::{invariant, recursion_terms, Recursion};
use crate::error::Result;
use crate::key::{GeometryConfig, InvariantKey};
use crate::memo::MemoStore;
use crate::potential::{associativity_sweep, derive_lambda, relation_series, Relation};
use crate::rational::{factorial, frac, render, Rational};
use crate::series::{Monomial, TruncationOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub description: String,
    pub expected: Rational,
    pub actual: Rational,
    pub pass: bool,
}

impl CaseResult {
    pub fn new(description: impl Into<String>, expected: Rational, actual: Rational) -> Self {
        let pass = expected == actual;
        Self {
            description: description.into(),
            expected,
            actual,
            pass,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn timed(suite: &str, started: Instant, cases: Vec<CaseResult>) -> Self {
        Self {
            suite: suite.to_string(),
            cases,
            elapsed: started.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Concatenate reports, keeping case order.
    pub fn merge(suite: &str, reports: Vec<SuiteReport>) -> SuiteReport {
        let elapsed = reports.iter().map(|r| r.elapsed).sum();
        SuiteReport {
            suite: suite.to_string(),
            cases: reports.into_iter().flat_map(|r| r.cases).collect(),
            elapsed,
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "suite {}: {} ({} cases, {} failed)",
            self.suite,
            if failed == 0 { "PASS" } else { "FAIL" },
            self.cases.len(),
            failed
        )?;
        for c in &self.cases {
            writeln!(
                f,
                "  [{}] {}: expected {}, got {}",
                if c.pass { "ok" } else { "FAIL" },
                c.description,
                render(&c.expected),
                render(&c.actual)
            )?;
        }
        Ok(())
    }
}

/// `(-1)^k k! / 2^(k+1)`.
pub fn lambda_k(k: u32) -> Rational {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    Rational::new(
        factorial(k as u64) * sign,
        BigInt::from(2).pow(k + 1),
    )
}

fn cfg(delta: u32) -> GeometryConfig {
    GeometryConfig::new(delta).expect("suite deltas are positive")
}

fn key(d: u32, n2: u32, n3: u32, n4: u32) -> InvariantKey {
    InvariantKey { d, n2, n3, n4 }
}

/// Lines: `I_1(T3^k T4^(k+3)) = lambda_k` for `delta = 1`.
pub fn check_line_closed_form(store: &MemoStore, k_max: u32) -> Result<SuiteReport> {
    let started = Instant::now();
    let cases = (0..=k_max)
        .map(|k| {
            let actual = invariant(store, cfg(1), key(1, 0, k, k + 3))?;
            Ok(CaseResult::new(format!("delta=1 I_1(0,{k},{})", k + 3), lambda_k(k), actual))
        })
        .collect::<Result<_>>()?;
    Ok(SuiteReport::timed("line-closed-form", started, cases))
}

/// Conics: `I_2(T3^k T4^(k+6)) = lambda_k` for `delta = 2`.
pub fn check_conic_closed_form(store: &MemoStore, k_max: u32) -> Result<SuiteReport> {
    let started = Instant::now();
    let cases = (0..=k_max)
        .map(|k| {
            let actual = invariant(store, cfg(2), key(2, 0, k, k + 6))?;
            Ok(CaseResult::new(format!("delta=2 I_2(0,{k},{})", k + 6), lambda_k(k), actual))
        })
        .collect::<Result<_>>()?;
    Ok(SuiteReport::timed("conic-closed-form", started, cases))
}

/// The two seeded degree one values and the unseeded `I_1(0, delta-2, 2) = (delta-2)!`.
pub fn check_degree1_bases(store: &MemoStore, delta_max: u32) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for delta in 1..=delta_max {
        let c = cfg(delta);
        let fact = |n: u32| Rational::from_integer(factorial(n as u64));
        cases.push(CaseResult::new(
            format!("delta={delta} I_1(2,{delta},0)"),
            fact(delta),
            invariant(store, c, key(1, 2, delta, 0))?,
        ));
        cases.push(CaseResult::new(
            format!("delta={delta} I_1(1,{},1)", delta - 1),
            fact(delta - 1),
            invariant(store, c, key(1, 1, delta - 1, 1))?,
        ));
        if delta >= 2 {
            cases.push(CaseResult::new(
                format!("delta={delta} I_1(0,{},2) via recursion", delta - 2),
                fact(delta - 2),
                invariant(store, c, key(1, 0, delta - 2, 2))?,
            ));
        }
    }
    Ok(SuiteReport::timed("degree1-bases", started, cases))
}

/// The quartic value 416, the derivation of lambda, and the two degree one
/// vanishing instances used in that derivation.
pub fn check_pinned_values(store: &MemoStore) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = vec![CaseResult::new(
        "delta=1 I_4(7,0,4)",
        Rational::from_integer(416.into()),
        invariant(store, cfg(1), key(4, 7, 0, 4))?,
    )];
    for delta in 1..=4 {
        let derived = derive_lambda(store, cfg(delta))?;
        let mut case = CaseResult::new(
            format!("delta={delta} derived lambda"),
            frac(-1, 4),
            derived.clone().unwrap_or_else(Rational::zero),
        );
        case.pass &= derived.is_some();
        cases.push(case);
    }
    for delta in 1..=5 {
        cases.push(CaseResult::new(
            format!("delta={delta} I_1(2,{},1)", delta + 1),
            Rational::zero(),
            invariant(store, cfg(delta), key(1, 2, delta + 1, 1))?,
        ));
        cases.push(CaseResult::new(
            format!("delta={delta} I_1(3,{},0)", delta + 2),
            Rational::zero(),
            invariant(store, cfg(delta), key(1, 3, delta + 2, 0))?,
        ));
    }
    Ok(SuiteReport::timed("pinned", started, cases))
}

/// Compare the algorithm's value at `key` against every recursion whose gate
/// holds there (and against the seeded factorials at the two base keys).
pub fn cross_check(store: &MemoStore, cfg: GeometryConfig, key: InvariantKey) -> Result<SuiteReport> {
    let started = Instant::now();
    let delta = cfg.delta();
    let reference = invariant(store, cfg, key)?;
    let mut cases = Vec::new();
    let base = match (key.d, key.n2, key.n3, key.n4) {
        (1, 2, n3, 0) if n3 == delta => Some(factorial(delta as u64)),
        (1, 1, n3, 1) if n3 + 1 == delta => Some(factorial(delta as u64 - 1)),
        _ => None,
    };
    if let Some(value) = base {
        cases.push(CaseResult::new(
            format!("delta={delta} {key} seed"),
            Rational::from_integer(value),
            reference.clone(),
        ));
    }
    for which in Recursion::ALL {
        if !which.gate_holds(cfg, key) {
            continue;
        }
        // a vanishing leading coefficient says nothing about the value
        let Some(actual) = recursion_terms(store, cfg, which, key)?.solve() else {
            continue;
        };
        cases.push(CaseResult::new(format!("delta={delta} {key} {which}"), reference.clone(), actual));
    }
    Ok(SuiteReport::timed("cross", started, cases))
}

/// Every admissible key with the given bounds.
pub fn admissible_keys(delta: u32, d_max: u32, n3_max: u32, n4_max: u32) -> Vec<InvariantKey> {
    let c = cfg(delta);
    let mut keys = Vec::new();
    for d in 1..=d_max {
        for n3 in 0..=n3_max {
            for n4 in 0..=n4_max {
                if let Some(n2) = admissible_n2(c, d, n3, n4) {
                    let k = key(d, n2, n3, n4);
                    debug_assert!(dimension_admissible(c, k));
                    keys.push(k);
                }
            }
        }
    }
    keys
}

pub fn cross_sweep(
    store: &MemoStore,
    deltas: &[u32],
    d_max: u32,
    n3_max: u32,
    n4_max: u32,
) -> Result<SuiteReport> {
    let started = Instant::now();
    let jobs: Vec<(u32, InvariantKey)> = deltas
        .iter()
        .flat_map(|&delta| admissible_keys(delta, d_max, n3_max, n4_max).into_iter().map(move |k| (delta, k)))
        .collect();
    let reports = jobs
        .into_par_iter()
        .map(|(delta, k)| cross_check(store, cfg(delta), k))
        .collect::<Result<Vec<_>>>()?;
    let mut merged = SuiteReport::merge("cross", reports);
    merged.elapsed = started.elapsed();
    Ok(merged)
}

/// Every divided-power coefficient of the four relation residuals with
/// `1 <= d <= d_max` and `m2 + m3 + m4 <= y_max`.
pub fn relations_sweep(store: &MemoStore, deltas: &[u32], d_max: u32, y_max: u32) -> Result<SuiteReport> {
    let started = Instant::now();
    let order = TruncationOrder::new(d_max, y_max);
    let jobs: Vec<(u32, Relation)> = deltas
        .iter()
        .flat_map(|&delta| Relation::ALL.map(|r| (delta, r)))
        .collect();
    let per_job = jobs
        .into_par_iter()
        .map(|(delta, which)| {
            let series = relation_series(store, cfg(delta), which, order)?;
            let mut cases = Vec::new();
            for d in 1..=d_max {
                for m2 in 0..=y_max {
                    for m3 in 0..=y_max - m2 {
                        for m4 in 0..=y_max - m2 - m3 {
                            let m = Monomial::new(d, m2, m3, m4);
                            let norm = factorial(m2 as u64) * factorial(m3 as u64) * factorial(m4 as u64);
                            let value = series.coefficient(&m) * Rational::from_integer(norm);
                            cases.push(CaseResult::new(
                                format!("delta={delta} relation {} at Q^{d} y^({m2},{m3},{m4})", which.number()),
                                Rational::zero(),
                                value,
                            ));
                        }
                    }
                }
            }
            Ok(cases)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::timed(
        "relations",
        started,
        per_job.into_iter().flatten().collect(),
    ))
}

/// Associativity of the big quantum product for all 125 basis triples. A
/// failing case reports the first nonzero residual coefficient.
pub fn wdvv_sweep(store: &MemoStore, deltas: &[u32], order: TruncationOrder) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for &delta in deltas {
        for (t, residual) in associativity_sweep(store, cfg(delta), order)? {
            let (description, actual) = match residual.first_nonzero() {
                None => (format!("delta={delta} ({},{},{}) at {order}", t[0], t[1], t[2]), Rational::zero()),
                Some((comp, m, c)) => (
                    format!(
                        "delta={delta} ({},{},{}) at {order}, {comp} coefficient of Q^{} y^({},{},{})",
                        t[0], t[1], t[2], m.q, m.y[0], m.y[1], m.y[2]
                    ),
                    c,
                ),
            };
            cases.push(CaseResult::new(description, Rational::zero(), actual));
        }
    }
    Ok(SuiteReport::timed("wdvv", started, cases))
}

use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use rootstack_gw::cache::{export_store, import_into, CacheError};
use rootstack_gw::series::TruncationOrder;
use rootstack_gw::verify::{self, SuiteReport};
use rootstack_gw::{
    admissible_n2, dimension_admissible, general_invariant, invariant, render, EngineError, GeneralKey,
    GeometryConfig, InvariantKey, MemoStore,
};

use crate::{Suite, TableFormat};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or an unreadable or malformed cache file.
    Usage(String),
    /// Cycle, depth, memo conflict or any other broken engine invariant.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::Malformed { .. } => CliError::Usage(e.to_string()),
            CacheError::Conflict(_) => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ResultRecord {
    delta: u32,
    d: u32,
    n: Vec<u32>,
    value: String,
    admissible: bool,
}

impl ResultRecord {
    fn csv_row(&self) -> String {
        let n: Vec<String> = self.n.iter().map(u32::to_string).collect();
        format!("{},{},{},{}\n", self.delta, self.d, n.join(","), self.value)
    }
}

#[derive(Serialize)]
struct CaseRecord {
    description: String,
    expected: String,
    actual: String,
    pass: bool,
}

#[derive(Serialize)]
struct ReportRecord {
    suite: String,
    passed: bool,
    cases: Vec<CaseRecord>,
}

impl From<&SuiteReport> for ReportRecord {
    fn from(r: &SuiteReport) -> Self {
        ReportRecord {
            suite: r.suite.clone(),
            passed: r.passed(),
            cases: r
                .cases
                .iter()
                .map(|c| CaseRecord {
                    description: c.description.clone(),
                    expected: render(&c.expected),
                    actual: render(&c.actual),
                    pass: c.pass,
                })
                .collect(),
        }
    }
}

pub struct VerifyPlan {
    pub suite: Suite,
    pub deltas: Vec<u32>,
    pub q_max: Option<u32>,
    pub y_max: Option<u32>,
    pub k_max: u32,
    pub d_max: Option<u32>,
    pub n3_max: u32,
    pub n4_max: u32,
}

fn config(delta: u32) -> Result<GeometryConfig, CliError> {
    Ok(GeometryConfig::new(delta)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

/// One process worth of engine state.
pub struct Session {
    store: MemoStore,
}

impl Session {
    pub fn new() -> Self {
        Session { store: MemoStore::new() }
    }

    pub fn import(&self, path: &Path) -> Result<usize, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Ok(import_into(&self.store, &text)?)
    }

    pub fn export(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, export_store(&self.store))
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
    }

    pub fn stats(&self) -> String {
        format!(
            "memo: entries={} hits={} misses={} longest-chain={}",
            self.store.len(),
            self.store.hits(),
            self.store.misses(),
            self.store.longest_chain()
        )
    }

    fn record(&self, cfg: GeometryConfig, key: InvariantKey) -> Result<ResultRecord, CliError> {
        let value = invariant(&self.store, cfg, key)?;
        Ok(ResultRecord {
            delta: cfg.delta(),
            d: key.d,
            n: key.counts().to_vec(),
            value: render(&value),
            admissible: dimension_admissible(cfg, key),
        })
    }

    pub fn compute(&self, delta: u32, d: u32, n: [u32; 3], json: bool) -> Result<String, CliError> {
        let cfg = config(delta)?;
        let key = InvariantKey::new(d, n[0], n[1], n[2])?;
        let rec = self.record(cfg, key)?;
        Ok(if json {
            format!("{}\n", to_json(&rec))
        } else {
            format!("{}\n", rec.value)
        })
    }

    pub fn general(&self, delta: u32, d: u32, n: [u32; 5], json: bool) -> Result<String, CliError> {
        let cfg = config(delta)?;
        let key = GeneralKey::new(d, n)?;
        let value = general_invariant(&self.store, cfg, key)?;
        let admissible = general_excess_twice(delta, d, n) == 0;
        let rec = ResultRecord {
            delta,
            d,
            n: n.to_vec(),
            value: render(&value),
            admissible,
        };
        Ok(if json {
            format!("{}\n", to_json(&rec))
        } else {
            format!("{}\n", rec.value)
        })
    }

    pub fn table(&self, delta: u32, d: u32, max_n3: u32, format: TableFormat) -> Result<String, CliError> {
        let cfg = config(delta)?;
        if d == 0 {
            return Err(CliError::Usage("table needs --degree >= 1".into()));
        }
        // n2 >= 0 caps n4 at 2(3d - 1) + n3 - d*delta
        let keys: Vec<InvariantKey> = (0..=max_n3)
            .flat_map(|n3| {
                let n4_max = (2 * (3 * d as i64 - 1) + n3 as i64 - d as i64 * delta as i64).max(0) as u32;
                (0..=n4_max).filter_map(move |n4| {
                    admissible_n2(cfg, d, n3, n4).map(|n2| InvariantKey { d, n2, n3, n4 })
                })
            })
            .collect();
        let rows = keys
            .into_par_iter()
            .map(|k| self.record(cfg, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match format {
            TableFormat::Csv => {
                let mut s = String::from("delta,d,n2,n3,n4,value\n");
                rows.iter().for_each(|r| s.push_str(&r.csv_row()));
                s
            }
            TableFormat::Json => format!("{}\n", to_json(&rows)),
        })
    }

    pub fn verify(&self, plan: &VerifyPlan, json: bool) -> Result<(String, bool), CliError> {
        let deltas = |default: &[u32]| -> Result<Vec<u32>, CliError> {
            let list = if plan.deltas.is_empty() { default.to_vec() } else { plan.deltas.clone() };
            for &delta in &list {
                config(delta)?;
            }
            Ok(list)
        };
        let store = &self.store;
        let report = match plan.suite {
            Suite::ClosedForms => SuiteReport::merge(
                "closed-forms",
                vec![
                    verify::check_line_closed_form(store, plan.k_max)?,
                    verify::check_conic_closed_form(store, plan.k_max)?,
                ],
            ),
            Suite::Bases => {
                let max = deltas(&[8])?.into_iter().max().unwrap_or(8);
                verify::check_degree1_bases(store, max)?
            }
            Suite::Pinned => verify::check_pinned_values(store)?,
            Suite::Relations => verify::relations_sweep(
                store,
                &deltas(&[1, 3])?,
                plan.d_max.or(plan.q_max).unwrap_or(3),
                plan.y_max.unwrap_or(8),
            )?,
            Suite::Wdvv => {
                let order = TruncationOrder::new(plan.q_max.unwrap_or(2), plan.y_max.unwrap_or(5));
                verify::wdvv_sweep(store, &deltas(&[1, 3, 4])?, order)?
            }
            Suite::Cross => verify::cross_sweep(
                store,
                &deltas(&[1, 2, 3])?,
                plan.d_max.unwrap_or(3),
                plan.n3_max,
                plan.n4_max,
            )?,
        };
        let text = if json {
            format!("{}\n", to_json(&ReportRecord::from(&report)))
        } else {
            report.to_string()
        };
        Ok((text, report.passed()))
    }
}

/// Twice the expected dimension minus twice the total codimension.
fn general_excess_twice(delta: u32, d: u32, n: [u32; 5]) -> i64 {
    let [n0, n1, n2, n3, n4] = n.map(|x| x as i64);
    let (d, delta) = (d as i64, delta as i64);
    let vdim = 6 * d - 2 - d * delta + 2 * (n0 + n1 + n2) + n3 + n4;
    vdim - 2 * (n1 + 2 * n2 + n4)
}

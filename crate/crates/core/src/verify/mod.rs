//! Named verification campaigns, the JSON report and tabulation.

mod catalog;
mod report;
mod table;

use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use regex::Regex;
use serde_json::Map;

pub use catalog::{catalog, default_gammas, CatalogEntry, CATALOG_VERSION};
pub use report::{CaseRecord, CatalogMeta, Mode, Outcome, Param, Status, Summary, VerificationReport};
pub use table::{emit_table, TableFormat, TableKind};

use crate::error::{Error, Result};
use crate::exact::{int, rat};
use crate::numerics::ProductTruncation;
use crate::operators::{dx_beta_q_split, QOperator};
use crate::qkernel::QContext;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "QFACTOR_THREADS";

/// Everything a suite run depends on.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub grid: Vec<QContext>,
    pub gammas: Vec<BigRational>,
    /// Degree bound for exact checks.
    pub n_max: u32,
    /// Degree bound for floating-point checks.
    pub numeric_n_max: u32,
    pub series_order: usize,
    pub nodes: usize,
    pub epsilon: f64,
    /// Adds this offset to β in the plus-shift coefficient of every
    /// `𝒟_x^{β,q}` the catalog builds. Used as a negative control.
    pub mutate_beta: Option<BigRational>,
    /// Record wall time per case. Off by default so reports are reproducible.
    pub timing: bool,
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            grid: default_grid(),
            gammas: default_gammas(),
            n_max: 20,
            numeric_n_max: 8,
            series_order: 15,
            nodes: 512,
            epsilon: 1e-14,
            mutate_beta: None,
            timing: false,
            threads: None,
        }
    }
}

impl SuiteConfig {
    /// `𝒟_x^{β,q}`, or its mutated variant when a mutation is set.
    pub fn dx(&self, ctx: &QContext) -> QOperator {
        let beta = ctx.beta();
        match &self.mutate_beta {
            Some(m) => dx_beta_q_split(ctx, &(beta + m), beta),
            None => dx_beta_q_split(ctx, beta, beta),
        }
    }

    pub fn truncation(&self) -> ProductTruncation {
        ProductTruncation::new(self.epsilon)
    }

    /// Distinct `s` values of the grid, ascending.
    pub fn distinct_s(&self) -> Vec<BigRational> {
        let mut s: Vec<BigRational> = self.grid.iter().map(|c| c.s().clone()).collect();
        s.sort();
        s.dedup();
        s
    }

    /// One `β = 0` context per distinct `s`.
    pub fn hermite_contexts(&self) -> Vec<QContext> {
        let mut out: Vec<QContext> = Vec::new();
        for c in &self.grid {
            if !out.iter().any(|h| h.s() == c.s()) {
                out.push(c.with_beta(int(0)));
            }
        }
        out
    }

    pub fn orthogonality_contexts(&self) -> Vec<QContext> {
        self.grid.iter().filter(|c| c.is_orthogonality_regime()).cloned().collect()
    }
}

/// `s ∈ {1/2, 1/3, 3/5}` × `β ∈ {0, 1/2, −1/3, 7/8}`.
pub fn default_grid() -> Vec<QContext> {
    let mut out = Vec::new();
    for s in [rat(1, 2), rat(1, 3), rat(3, 5)] {
        for beta in [int(0), rat(1, 2), rat(-1, 3), rat(7, 8)] {
            out.push(QContext::new(s.clone(), beta).expect("default grid is valid"));
        }
    }
    out
}

/// Compiles comma-separated glob patterns (`*` and `?`) into anchored regexes.
fn compile_filter(filter: &str) -> Result<Vec<(String, Regex)>> {
    filter
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pattern| {
            let mut re = String::from("^");
            for ch in pattern.chars() {
                match ch {
                    '*' => re.push_str(".*"),
                    '?' => re.push('.'),
                    c => re.push_str(&regex::escape(&c.to_string())),
                }
            }
            re.push('$');
            let compiled = Regex::new(&re).map_err(|_| Error::UnknownCheck(pattern.to_string()))?;
            Ok((pattern.to_string(), compiled))
        })
        .collect()
}

/// Catalog entries selected by `filter`. Every pattern must match at least
/// one entry.
pub fn select(filter: &str) -> Result<Vec<&'static CatalogEntry>> {
    let patterns = compile_filter(filter)?;
    if patterns.is_empty() {
        return Err(Error::UnknownCheck(filter.to_string()));
    }
    for (text, re) in &patterns {
        if !catalog().iter().any(|e| re.is_match(e.check_id)) {
            return Err(Error::UnknownCheck(text.clone()));
        }
    }
    Ok(catalog()
        .iter()
        .filter(|e| patterns.iter().any(|(_, re)| re.is_match(e.check_id)))
        .collect())
}

/// Worker count from the config, else from `QFACTOR_THREADS`.
pub fn thread_cap(config: &SuiteConfig) -> Result<Option<usize>> {
    if let Some(n) = config.threads {
        return Ok(Some(n.max(1)));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| Some(n.max(1)))
            .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Runs every catalog case selected by `filter` and assembles a sorted report.
pub fn run_suite(filter: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    let entries = select(filter)?;
    let shared = Arc::new(config.clone());
    let mut planned: Vec<_> = entries.iter().flat_map(|e| e.plan(&shared)).collect();
    planned.sort_by(|a, b| {
        (a.check_id, a.params.iter().map(|(_, p)| p).collect::<Vec<_>>())
            .cmp(&(b.check_id, b.params.iter().map(|(_, p)| p).collect::<Vec<_>>()))
    });

    let timing = config.timing;
    let execute = || {
        planned
            .par_iter()
            .map(|case| {
                let start = Instant::now();
                let outcome = (case.run)();
                let ms = if timing {
                    start.elapsed().as_secs_f64() * 1e3
                } else {
                    0.0
                };
                (outcome, ms)
            })
            .collect::<Vec<_>>()
    };
    let results = match thread_cap(config)? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(execute),
        None => execute(),
    };

    let cases: Vec<CaseRecord> = planned
        .iter()
        .zip(results)
        .map(|(case, (outcome, ms))| {
            let params: Map<_, _> = case.params.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
            CaseRecord {
                check_id: case.check_id.to_string(),
                params,
                status: outcome.status,
                residual: outcome.residual.filter(|r| r.is_finite()),
                remainder_degree: outcome.remainder_degree,
                ms,
                note: outcome.note,
            }
        })
        .collect();
    let catalog = entries
        .iter()
        .map(|e| CatalogMeta {
            check_id: e.check_id,
            anchor: e.anchor,
            mode: e.mode,
        })
        .collect();
    Ok(VerificationReport {
        catalog_version: CATALOG_VERSION,
        catalog,
        summary: report::summarize(&cases),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            grid: vec![QContext::new(rat(1, 2), rat(1, 2)).unwrap()],
            n_max: 6,
            numeric_n_max: 3,
            series_order: 5,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn catalog_ids_are_unique() {
        let mut ids: Vec<_> = catalog().iter().map(|e| e.check_id).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }

    #[test]
    fn glob_selection() {
        assert_eq!(select("eq3.9").unwrap().len(), 1);
        assert!(select("eq3.1*").unwrap().len() >= 4);
        assert_eq!(select("eq1.?").unwrap().len(), 4);
        assert!(matches!(select("nonexistent"), Err(Error::UnknownCheck(_))));
        assert!(matches!(select("eq3.9,bogus"), Err(Error::UnknownCheck(_))));
        assert!(matches!(select(""), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn default_grid_has_twelve_points() {
        let g = default_grid();
        assert_eq!(g.len(), 12);
        let cfg = SuiteConfig::default();
        assert_eq!(cfg.hermite_contexts().len(), 3);
        assert_eq!(cfg.distinct_s(), vec![rat(1, 3), rat(1, 2), rat(3, 5)]);
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite("*", &small()).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(report.summary.pass > 0);
        assert_eq!(report.catalog.len(), catalog().len());
    }

    #[test]
    fn cases_are_sorted() {
        let report = run_suite("eq3.9,eq1.11", &small()).unwrap();
        let ids: Vec<_> = report.cases.iter().map(|c| c.check_id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        let ns: Vec<_> = report.cases_for("eq3.9").map(|c| c.params["n"].as_i64().unwrap()).collect();
        assert_eq!(ns, (0..=6).collect::<Vec<_>>());
    }

    #[test]
    fn mutation_is_detected() {
        let cfg = SuiteConfig {
            mutate_beta: Some(rat(1, 7)),
            ..small()
        };
        let report = run_suite("eq3.9", &cfg).unwrap();
        assert_eq!(report.summary.fail, report.summary.total);
        assert!(report.failures().all(|c| c.remainder_degree.is_some()));
    }
}

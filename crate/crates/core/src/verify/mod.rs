//! The lemma harness: runs every structural invariant over a corpus of tables and
//! collects per-table reports with replayable failure witnesses.
//!
//! The checks on H-classes and fibers rely only on the semigroup axioms, so they are
//! run on every table; a failure means a bug (or a counterexample) and is never
//! swallowed.

mod checks;
mod corpus;

use rayon::prelude::*;
use serde::Serialize;

use crate::order::DEFAULT_NODE_BUDGET;
use crate::sgcore::CayleyTable;

pub use checks::{
    check_chi6_well_defined, check_fiber_partition, check_finite_bounds, check_hclass_group,
    check_lemma_he, check_lemma_ideal, check_power_step, table_stats, CheckName, CheckResult,
    Fault, TableStats, Violation,
};
pub use corpus::{CorpusEntry, CorpusSource, CorpusSpec, CorpusSpecError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub table_id: String,
    pub checks: Vec<CheckResult>,
    pub stats: TableStats,
}

impl LemmaReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub fail_fast: bool,
    pub node_budget: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            fail_fast: false,
            node_budget: DEFAULT_NODE_BUDGET,
            fault: None,
        }
    }
}

/// Runs every check on one table.
pub fn check_table(table_id: &str, table: &CayleyTable, options: &SuiteOptions) -> LemmaReport {
    let (stats, budget_errors) = table_stats(table, options.node_budget);
    let checks = vec![
        checks::check_lemma_he_with(table, options.fault),
        check_lemma_ideal(table),
        check_power_step(table),
        check_fiber_partition(table),
        check_hclass_group(table),
        check_chi6_well_defined(table),
        check_finite_bounds(table, &stats, &budget_errors),
    ];
    LemmaReport {
        table_id: table_id.to_string(),
        checks,
        stats,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub tables: usize,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryError {
    pub table_id: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub summary: Summary,
    pub reports: Vec<LemmaReport>,
    pub errors: Vec<EntryError>,
}

impl SuiteOutcome {
    pub fn failed(&self) -> bool {
        self.summary.failures > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Checks every entry. Reports come back in corpus order regardless of how many
/// workers the current rayon pool has. With `fail_fast`, entries run in order and the
/// run stops after the first failing table.
pub fn run_entries(entries: &[CorpusEntry], options: &SuiteOptions) -> SuiteOutcome {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let mut sink = |entry: &CorpusEntry, report: Option<LemmaReport>| match report {
        Some(r) => reports.push(r),
        None => errors.push(EntryError {
            table_id: entry.id.clone(),
            error: entry.table.clone().err().unwrap_or_default(),
        }),
    };
    let check = |entry: &CorpusEntry| {
        entry
            .table
            .as_ref()
            .ok()
            .map(|t| check_table(&entry.id, t, options))
    };
    if options.fail_fast {
        for entry in entries {
            let report = check(entry);
            let stop = report.as_ref().is_some_and(|r| !r.passed());
            sink(entry, report);
            if stop {
                break;
            }
        }
    } else {
        let results: Vec<Option<LemmaReport>> = entries.par_iter().map(check).collect();
        for (entry, report) in entries.iter().zip(results) {
            sink(entry, report);
        }
    }
    let summary = Summary {
        tables: reports.len(),
        checks: reports.iter().map(|r| r.checks.len()).sum(),
        failures: reports.iter().map(LemmaReport::failures).sum(),
    };
    SuiteOutcome {
        summary,
        reports,
        errors,
    }
}

pub fn run_suite(spec: &CorpusSpec, options: &SuiteOptions) -> SuiteOutcome {
    run_entries(&spec.entries(), options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgcore::Element;
    use crate::witness::{monogenic, stock, Family};

    #[test]
    fn group_passes_lemma_he() {
        let r = check_lemma_he(&stock(Family::CyclicGroup, 4));
        assert!(r.passed);
        assert!(check_lemma_he(&stock(Family::Zero, 4)).passed);
    }

    #[test]
    fn monogenic_passes_everything() {
        let m = monogenic(3, 4);
        let report = check_table("m", &m, &SuiteOptions::default());
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.stats.fiber_sizes.get(&3), Some(&6));
        assert_eq!(report.stats.idempotent_count, 1);
    }

    #[test]
    fn fiber_partition_examples() {
        let r = check_table("lz", &stock(Family::LeftZero, 4), &SuiteOptions::default());
        assert_eq!(r.stats.fiber_sizes.len(), 4);
        assert!(r.stats.fiber_sizes.values().all(|&s| s == 1));
        let r = check_table("z", &stock(Family::Zero, 4), &SuiteOptions::default());
        assert_eq!(
            r.stats.fiber_sizes.values().copied().collect::<Vec<_>>(),
            vec![4]
        );
    }

    #[test]
    fn injected_fault_fails_with_non_replaying_witness() {
        let g = stock(Family::CyclicGroup, 3);
        let options = SuiteOptions {
            fault: Some(Fault::InvertedAntichainOracle),
            ..SuiteOptions::default()
        };
        let report = check_table("c3", &g, &options);
        assert_eq!(report.failures(), 1);
        let he = &report.checks[0];
        assert_eq!(he.name, CheckName::LemmaHe);
        let witness = he.witness.as_ref().unwrap();
        assert_eq!(
            *witness,
            Violation::HeNotAntichain {
                e: Element::new(0),
                x: Element::new(1),
                y: Element::new(2),
                product: Element::new(0)
            }
        );
        // The failure came from the corrupted oracle, not from the table.
        assert!(!witness.replays(&g));
    }

    #[test]
    fn fail_fast_stops_early() {
        let spec: CorpusSpec = "stock:3..5".parse().unwrap();
        let options = SuiteOptions {
            fail_fast: true,
            fault: Some(Fault::InvertedAntichainOracle),
            ..SuiteOptions::default()
        };
        let outcome = run_suite(&spec, &options);
        // left_zero, right_zero, zero pass; cyclic_group(3) is the first failure.
        assert_eq!(outcome.summary.tables, 4);
        assert!(outcome.failed());
    }

    #[test]
    fn json_shape() {
        let spec: CorpusSpec = "stock:2".parse().unwrap();
        let outcome = run_suite(&spec, &SuiteOptions::default());
        let v: serde_json::Value = serde_json::from_str(&outcome.to_json()).unwrap();
        assert_eq!(v["summary"]["tables"], 4);
        assert_eq!(v["summary"]["checks"], 28);
        assert_eq!(v["summary"]["failures"], 0);
        assert_eq!(v["reports"][0]["table_id"], "stock(left_zero,2)");
        assert_eq!(v["reports"][0]["checks"][0]["name"], "lemma_he");
        assert_eq!(v["reports"][0]["stats"]["max_chain"], 2);
    }
}

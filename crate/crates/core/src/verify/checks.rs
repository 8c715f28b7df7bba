use std::collections::BTreeMap;

use serde::Serialize;

use crate::order::{antichain_graph, chain_graph, is_antichain, is_chain, CliqueError, GraphMode};
use crate::ramsey::chi6_matches;
use crate::sgcore::{CayleyTable, Element, ElementSet};
use crate::structure::{
    fiber_decomposition, h_class, hclass_group_defect, idempotents, least_power_reaching,
    power_profile, GroupDefect,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    /// `H_e ∖ {e}` is an antichain for every idempotent `e`.
    LemmaHe,
    /// `H_e·√∞(e) ∪ √∞(e)·H_e ⊆ H_e`.
    LemmaIdeal,
    /// `x^(n+1) ∈ H_e` when `n` is least with `x^n = e`.
    PowerStep,
    /// The fibers `√∞(e)` partition the table.
    FiberPartition,
    /// `H_e` is a group for every idempotent `e`.
    HclassGroup,
    /// Exactly one six-color case applies to every pair of distinct idempotents.
    Chi6WellDefined,
    /// Largest chain and antichain are exact and bounded by the order.
    FiniteBounds,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::LemmaHe,
        CheckName::LemmaIdeal,
        CheckName::PowerStep,
        CheckName::FiberPartition,
        CheckName::HclassGroup,
        CheckName::Chi6WellDefined,
        CheckName::FiniteBounds,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::LemmaHe => "lemma_he",
            CheckName::LemmaIdeal => "lemma_ideal",
            CheckName::PowerStep => "power_step",
            CheckName::FiberPartition => "fiber_partition",
            CheckName::HclassGroup => "hclass_group",
            CheckName::Chi6WellDefined => "chi6_well_defined",
            CheckName::FiniteBounds => "finite_bounds",
        }
    }
}

/// Concrete evidence of a failed check: enough elements and products to redo it by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    HeNotAntichain {
        e: Element,
        x: Element,
        y: Element,
        product: Element,
    },
    IdealEscape {
        e: Element,
        /// Member of `√∞(e)`.
        x: Element,
        /// Member of `H_e`.
        y: Element,
        /// True when the escaping product is `x·y`, false for `y·x`.
        fiber_on_left: bool,
        product: Element,
    },
    PowerStepEscape {
        x: Element,
        e: Element,
        n: usize,
        power: Element,
    },
    FiberMismatch {
        x: Element,
        e: Element,
        in_fiber: bool,
        reaches_by_power: bool,
    },
    FiberCoverage {
        x: Element,
        fibers_containing: Vec<Element>,
    },
    HclassNotGroup {
        e: Element,
        defect: GroupDefect,
    },
    Chi6IllDefined {
        a: Element,
        b: Element,
        ab: Element,
        ba: Element,
        matches: Vec<u8>,
    },
    CliqueBudget {
        mode: GraphMode,
        budget: u64,
    },
    BoundViolated {
        order: usize,
        max_chain: usize,
        max_antichain: usize,
    },
}

impl Violation {
    /// Re-evaluates the witness against `table`; true iff the failure reproduces.
    pub fn replays(&self, table: &CayleyTable) -> bool {
        match self {
            Violation::HeNotAntichain { e, x, y, product } => {
                let members = h_class(table, *e).members;
                let p = table.mul(*x, *y);
                x != y
                    && x != e
                    && y != e
                    && members.contains(*x)
                    && members.contains(*y)
                    && p == *product
                    && (p == *x || p == *y)
            }
            Violation::IdealEscape {
                e,
                x,
                y,
                fiber_on_left,
                product,
            } => {
                let p = if *fiber_on_left {
                    table.mul(*x, *y)
                } else {
                    table.mul(*y, *x)
                };
                let h = h_class(table, *e).members;
                p == *product
                    && least_power_reaching(table, *x, *e).is_some()
                    && h.contains(*y)
                    && !h.contains(p)
            }
            Violation::PowerStepEscape { x, e, n, power } => {
                table.pow(*x, *n) == *e
                    && table.pow(*x, n + 1) == *power
                    && !h_class(table, *e).members.contains(*power)
            }
            Violation::FiberMismatch {
                x,
                e,
                in_fiber,
                reaches_by_power,
            } => {
                let fd = fiber_decomposition(table);
                let now_in = fd.fiber(*e).is_some_and(|f| f.contains(*x));
                let now_reaches = least_power_reaching(table, *x, *e).is_some();
                now_in == *in_fiber && now_reaches == *reaches_by_power && now_in != now_reaches
            }
            Violation::FiberCoverage {
                x,
                fibers_containing,
            } => {
                let fd = fiber_decomposition(table);
                let containing: Vec<Element> = fd
                    .fibers
                    .iter()
                    .filter(|(_, f)| f.contains(*x))
                    .map(|(&e, _)| e)
                    .collect();
                containing == *fibers_containing && containing.len() != 1
            }
            Violation::HclassNotGroup { e, defect } => {
                hclass_group_defect(table, *e).ok().flatten().as_ref() == Some(defect)
            }
            Violation::Chi6IllDefined {
                a,
                b,
                ab,
                ba,
                matches,
            } => {
                table.mul(*a, *b) == *ab
                    && table.mul(*b, *a) == *ba
                    && chi6_matches(table, *a, *b) == *matches
                    && matches.len() != 1
            }
            Violation::CliqueBudget { mode, budget } => {
                let graph = match mode {
                    GraphMode::Chain => chain_graph(table),
                    GraphMode::Antichain => antichain_graph(table),
                };
                graph.max_clique(*budget).is_err()
            }
            Violation::BoundViolated {
                order,
                max_chain,
                max_antichain,
            } => {
                *order == table.order()
                    && (*max_chain == 0 || *order < (*max_chain).max(*max_antichain))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Violation>,
}

impl CheckResult {
    fn from_violation(name: CheckName, violation: Option<Violation>) -> Self {
        CheckResult {
            name,
            passed: violation.is_none(),
            witness: violation,
        }
    }
}

/// Deliberately corrupted oracles, used to exercise the failure path end to end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// `lemma_he` tests the negation of the antichain condition.
    InvertedAntichainOracle,
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inverted-antichain-oracle" | "lemma_he" => Ok(Fault::InvertedAntichainOracle),
            other => Err(format!("unknown fault `{other}`")),
        }
    }
}

pub fn check_lemma_he(table: &CayleyTable) -> CheckResult {
    check_lemma_he_with(table, None)
}

pub(crate) fn check_lemma_he_with(table: &CayleyTable, fault: Option<Fault>) -> CheckResult {
    let inverted = fault == Some(Fault::InvertedAntichainOracle);
    let violation = idempotents(table).iter().find_map(|e| {
        let mut rest = h_class(table, e).members;
        rest.remove(e);
        rest.iter().find_map(|x| {
            rest.iter().filter(|&y| y != x).find_map(|y| {
                let product = table.mul(x, y);
                let fixes_argument = product == x || product == y;
                (fixes_argument != inverted).then_some(Violation::HeNotAntichain {
                    e,
                    x,
                    y,
                    product,
                })
            })
        })
    });
    CheckResult::from_violation(CheckName::LemmaHe, violation)
}

pub fn check_lemma_ideal(table: &CayleyTable) -> CheckResult {
    let fibers = fiber_decomposition(table);
    let violation = fibers.fibers.iter().find_map(|(&e, fiber)| {
        let h = h_class(table, e).members;
        fiber.iter().find_map(|x| {
            h.iter().find_map(|y| {
                let xy = table.mul(x, y);
                let yx = table.mul(y, x);
                if !h.contains(xy) {
                    Some(Violation::IdealEscape {
                        e,
                        x,
                        y,
                        fiber_on_left: true,
                        product: xy,
                    })
                } else if !h.contains(yx) {
                    Some(Violation::IdealEscape {
                        e,
                        x,
                        y,
                        fiber_on_left: false,
                        product: yx,
                    })
                } else {
                    None
                }
            })
        })
    });
    CheckResult::from_violation(CheckName::LemmaIdeal, violation)
}

pub fn check_power_step(table: &CayleyTable) -> CheckResult {
    let violation = table.elements().find_map(|x| {
        let e = power_profile(table, x).idempotent_power;
        let n = least_power_reaching(table, x, e).expect("idempotent power is a power");
        let power = table.pow(x, n + 1);
        (!h_class(table, e).members.contains(power)).then_some(Violation::PowerStepEscape {
            x,
            e,
            n,
            power,
        })
    });
    CheckResult::from_violation(CheckName::PowerStep, violation)
}

pub fn check_fiber_partition(table: &CayleyTable) -> CheckResult {
    let fd = fiber_decomposition(table);
    let idem = idempotents(table);
    let mut violation = None;
    'outer: for x in table.elements() {
        let containing: Vec<Element> = fd
            .fibers
            .iter()
            .filter(|(_, f)| f.contains(x))
            .map(|(&e, _)| e)
            .collect();
        if containing.len() != 1 {
            violation = Some(Violation::FiberCoverage {
                x,
                fibers_containing: containing,
            });
            break;
        }
        // Both characterizations of √∞(e) must agree, including e ∈ √∞(e).
        for e in &idem {
            let in_fiber = fd.fiber(e).is_some_and(|f| f.contains(x));
            let reaches_by_power = least_power_reaching(table, x, e).is_some();
            if in_fiber != reaches_by_power {
                violation = Some(Violation::FiberMismatch {
                    x,
                    e,
                    in_fiber,
                    reaches_by_power,
                });
                break 'outer;
            }
        }
    }
    CheckResult::from_violation(CheckName::FiberPartition, violation)
}

pub fn check_hclass_group(table: &CayleyTable) -> CheckResult {
    let violation = idempotents(table).iter().find_map(|e| {
        hclass_group_defect(table, e)
            .expect("argument is idempotent")
            .map(|defect| Violation::HclassNotGroup { e, defect })
    });
    CheckResult::from_violation(CheckName::HclassGroup, violation)
}

pub fn check_chi6_well_defined(table: &CayleyTable) -> CheckResult {
    let idem = idempotents(table).to_vec();
    let violation = idem.iter().enumerate().find_map(|(i, &a)| {
        idem[i + 1..].iter().find_map(|&b| {
            let matches = chi6_matches(table, a, b);
            (matches.len() != 1).then(|| Violation::Chi6IllDefined {
                a,
                b,
                ab: table.mul(a, b),
                ba: table.mul(b, a),
                matches,
            })
        })
    });
    CheckResult::from_violation(CheckName::Chi6WellDefined, violation)
}

/// Per-table numbers reported alongside the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableStats {
    pub order: usize,
    pub idempotent_count: usize,
    pub max_chain: Option<usize>,
    pub max_antichain: Option<usize>,
    pub max_chain_witness: Option<ElementSet>,
    pub max_antichain_witness: Option<ElementSet>,
    /// Fiber size keyed by idempotent.
    pub fiber_sizes: BTreeMap<usize, usize>,
    /// H-class sizes in order of least member.
    pub hclass_sizes: Vec<usize>,
}

pub fn table_stats(
    table: &CayleyTable,
    node_budget: u64,
) -> (TableStats, Vec<(GraphMode, CliqueError)>) {
    let mut budget_errors = Vec::new();
    let mut search = |mode: GraphMode| {
        let graph = match mode {
            GraphMode::Chain => chain_graph(table),
            GraphMode::Antichain => antichain_graph(table),
        };
        match graph.max_clique(node_budget) {
            Ok(set) => Some(set),
            Err(err) => {
                budget_errors.push((mode, err));
                None
            }
        }
    };
    let chain = search(GraphMode::Chain);
    let antichain = search(GraphMode::Antichain);
    let stats = TableStats {
        order: table.order(),
        idempotent_count: idempotents(table).len(),
        max_chain: chain.as_ref().map(ElementSet::len),
        max_antichain: antichain.as_ref().map(ElementSet::len),
        max_chain_witness: chain,
        max_antichain_witness: antichain,
        fiber_sizes: fiber_decomposition(table)
            .sizes()
            .into_iter()
            .map(|(e, s)| (e.index(), s))
            .collect(),
        hclass_sizes: crate::structure::h_classes(table)
            .iter()
            .map(|c| c.members.len())
            .collect(),
    };
    (stats, budget_errors)
}

pub fn check_finite_bounds(
    table: &CayleyTable,
    stats: &TableStats,
    budget_errors: &[(GraphMode, CliqueError)],
) -> CheckResult {
    if let Some((mode, CliqueError::Budget { budget, .. })) = budget_errors.first() {
        return CheckResult::from_violation(
            CheckName::FiniteBounds,
            Some(Violation::CliqueBudget {
                mode: *mode,
                budget: *budget,
            }),
        );
    }
    let chain = stats.max_chain_witness.as_ref().expect("search completed");
    let antichain = stats
        .max_antichain_witness
        .as_ref()
        .expect("search completed");
    let (c, a) = (chain.len(), antichain.len());
    let sound = is_chain(table, chain) && is_antichain(table, antichain);
    let violation =
        (!sound || c == 0 || table.order() < c.max(a)).then_some(Violation::BoundViolated {
            order: table.order(),
            max_chain: c,
            max_antichain: a,
        });
    CheckResult::from_violation(CheckName::FiniteBounds, violation)
}

//! Constructed semigroups: finite windows onto the level semilattice, its retraction
//! onto the odd-level chain, monogenic semigroups and a few stock families.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::order::{
    antichain_graph, is_chain, is_semilattice, max_antichain_size, min_chain_cover, CliqueError,
};
use crate::sgcore::{validate_associativity, CayleyTable, Element, ElementSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("⟨{level},{slot}⟩ is not an element: odd levels carry slot 0, even level x carries slots 1..=x")]
    InvalidLevelElement { level: usize, slot: usize },
    #[error("unknown family `{0}` (expected left_zero, right_zero, zero or cyclic_group)")]
    UnknownFamily(String),
}

/// A point `⟨level, slot⟩` of the level semilattice.
///
/// Odd levels hold the single point `⟨x,0⟩`; an even level `x` holds `⟨x,1⟩ … ⟨x,x⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LevelElement {
    level: usize,
    slot: usize,
}

impl LevelElement {
    pub fn new(level: usize, slot: usize) -> Result<Self, WitnessError> {
        let valid = if level % 2 == 1 {
            slot == 0
        } else {
            level >= 2 && (1..=level).contains(&slot)
        };
        if valid {
            Ok(LevelElement { level, slot })
        } else {
            Err(WitnessError::InvalidLevelElement { level, slot })
        }
    }

    pub fn level(self) -> usize {
        self.level
    }

    pub fn slot(self) -> usize {
        self.slot
    }

    pub fn is_odd_level(self) -> bool {
        self.level % 2 == 1
    }

    /// All points with level ≤ `max_level`, ordered by (level, slot).
    pub fn up_to(max_level: usize) -> Vec<LevelElement> {
        (1..=max_level)
            .flat_map(|level| {
                let slots = if level % 2 == 1 { 0..=0 } else { 1..=level };
                slots.map(move |slot| LevelElement { level, slot })
            })
            .collect()
    }
}

impl fmt::Display for LevelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.level, self.slot)
    }
}

impl FromStr for LevelElement {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, WitnessError> {
        let bad = || WitnessError::InvalidLevelElement { level: 0, slot: 0 };
        let (level, slot) = s.split_once('.').ok_or_else(bad)?;
        let level = level.parse().map_err(|_| bad())?;
        let slot = slot.parse().map_err(|_| bad())?;
        LevelElement::new(level, slot)
    }
}

/// The level semilattice product.
pub fn ex_op(a: LevelElement, b: LevelElement) -> LevelElement {
    match a.level.cmp(&b.level) {
        Ordering::Equal if a.slot == b.slot => a,
        Ordering::Equal => LevelElement {
            level: a.level - 1,
            slot: 0,
        },
        Ordering::Less => a,
        Ordering::Greater => b,
    }
}

/// Retraction onto the odd-level chain: even levels drop one level.
pub fn ex_r(a: LevelElement) -> LevelElement {
    if a.is_odd_level() {
        a
    } else {
        LevelElement {
            level: a.level - 1,
            slot: 0,
        }
    }
}

/// The sub-semilattice of points with level ≤ `max_level` as a Cayley table.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub max_level: usize,
    pub table: CayleyTable,
    pub points: Vec<LevelElement>,
}

impl Truncation {
    pub fn element_of(&self, point: LevelElement) -> Option<Element> {
        self.points.binary_search(&point).ok().map(Element::new)
    }

    pub fn point(&self, x: Element) -> LevelElement {
        self.points[x.index()]
    }

    /// Elements on a given level.
    pub fn level(&self, level: usize) -> Vec<Element> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.level == level)
            .map(|(i, _)| Element::new(i))
            .collect()
    }

    /// The retraction as a map on table elements.
    pub fn r_map(&self) -> Vec<Element> {
        self.points
            .iter()
            .map(|&p| {
                self.element_of(ex_r(p))
                    .expect("retraction stays inside the window")
            })
            .collect()
    }
}

/// Products never exceed the larger input level, so the window is closed.
pub fn ex_truncate(max_level: usize) -> Truncation {
    assert!(max_level >= 1, "truncation level must be positive");
    let points = LevelElement::up_to(max_level);
    let index = |p: LevelElement| points.binary_search(&p).expect("closed under product");
    let table = CayleyTable::from_fn(points.len(), |x, y| index(ex_op(points[x], points[y])))
        .expect("in range")
        .with_labels(points.iter().map(ToString::to_string).collect())
        .expect("labels are distinct");
    Truncation {
        max_level,
        table,
        points,
    }
}

/// Number of points with level ≤ `max_level`.
pub fn truncation_order(max_level: usize) -> usize {
    let odd = max_level.div_ceil(2);
    let even: usize = (1..=max_level / 2).map(|k| 2 * k).sum();
    odd + even
}

/// `⟨x | x^(index+period) = x^index⟩`; element `a - 1` is `x^a`.
pub fn monogenic(index: usize, period: usize) -> CayleyTable {
    assert!(index >= 1 && period >= 1, "index and period start at 1");
    let n = index + period - 1;
    let fold = |s: usize| {
        if s <= n {
            s
        } else {
            index + (s - index) % period
        }
    };
    CayleyTable::from_fn(n, |a, b| fold(a + 1 + b + 1) - 1).expect("in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    LeftZero,
    RightZero,
    Zero,
    CyclicGroup,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::LeftZero,
        Family::RightZero,
        Family::Zero,
        Family::CyclicGroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::LeftZero => "left_zero",
            Family::RightZero => "right_zero",
            Family::Zero => "zero",
            Family::CyclicGroup => "cyclic_group",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, WitnessError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.replace('-', "_"))
            .ok_or_else(|| WitnessError::UnknownFamily(s.to_string()))
    }
}

pub fn stock(family: Family, n: usize) -> CayleyTable {
    assert!(n >= 1, "stock families start at order 1");
    let table = match family {
        Family::LeftZero => CayleyTable::from_fn(n, |x, _| x),
        Family::RightZero => CayleyTable::from_fn(n, |_, y| y),
        Family::Zero => CayleyTable::from_fn(n, |_, _| 0),
        Family::CyclicGroup => CayleyTable::from_fn(n, |x, y| (x + y) % n),
    };
    table.expect("in range")
}

/// Outcome of one finite-window property of the level semilattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Largest antichain of the window with top level `max_level`: the widest even level.
pub fn expected_max_antichain(max_level: usize) -> usize {
    if max_level >= 2 {
        2 * (max_level / 2)
    } else {
        1
    }
}

/// Checks the finite forms of the level semilattice's properties on one window:
/// it is a semilattice, antichains stay inside a single even level, the widest
/// antichain and the fewest covering chains both equal the widest even level, the
/// odd levels form a chain, and the retraction is a homomorphism onto them whose
/// fibers have the expected sizes.
pub fn check_example_properties(max_level: usize) -> Result<Vec<PropertyCheck>, CliqueError> {
    let t = ex_truncate(max_level);
    let table = &t.table;
    let mut out = Vec::new();
    let mut push = |name, passed, detail: String| {
        out.push(PropertyCheck {
            name,
            passed,
            detail,
        })
    };

    let associative = validate_associativity(table).is_associative();
    let semilattice = is_semilattice(table);
    push(
        "semilattice",
        associative && semilattice,
        format!("associative: {associative}, commutative and idempotent: {semilattice}"),
    );

    let stray = antichain_graph(table).edges().into_iter().find(|&(x, y)| {
        let (a, b) = (t.point(x), t.point(y));
        a.level != b.level || a.is_odd_level()
    });
    push(
        "antichains_within_even_levels",
        stray.is_none(),
        match stray {
            None => "every incomparable pair shares an even level".to_string(),
            Some((x, y)) => format!(
                "{} and {} are incomparable across levels",
                t.point(x),
                t.point(y)
            ),
        },
    );

    let antichain = max_antichain_size(table)?;
    let expected = expected_max_antichain(max_level);
    push(
        "max_antichain",
        antichain == expected,
        format!("max antichain {antichain}, expected {expected}"),
    );

    let cover = min_chain_cover(table).map(|c| c.len()).unwrap_or(0);
    push(
        "min_chain_cover",
        cover == antichain && cover == expected,
        format!("min chain cover {cover}, max antichain {antichain}"),
    );

    let odd = ElementSet::from_elements(
        table.order(),
        table.elements().filter(|&x| t.point(x).is_odd_level()),
    );
    push(
        "odd_levels_chain",
        is_chain(table, &odd),
        format!(
            "L = {{{}}}",
            odd.iter()
                .map(|x| t.point(x).to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    );

    let r = t.r_map();
    let hom_failure = table.elements().find_map(|x| {
        table.elements().find_map(|y| {
            let lhs = r[table.mul(x, y).index()];
            let rhs = table.mul(r[x.index()], r[y.index()]);
            (lhs != rhs).then_some((x, y))
        })
    });
    let mut fiber_ok = r.iter().all(|&img| odd.contains(img));
    let mut sizes = Vec::new();
    for level in (1..=max_level).step_by(2) {
        let target = t
            .element_of(LevelElement { level, slot: 0 })
            .expect("odd level present");
        let size = r.iter().filter(|&&img| img == target).count();
        let expected = if level < max_level { level + 2 } else { 1 };
        fiber_ok &= size == expected;
        sizes.push(format!("{level}.0:{size}"));
    }
    push(
        "r_homomorphism",
        hom_failure.is_none() && fiber_ok,
        match hom_failure {
            Some((x, y)) => format!(
                "r({}·{}) ≠ r({})·r({})",
                t.point(x),
                t.point(y),
                t.point(x),
                t.point(y)
            ),
            None => format!("fiber sizes {}", sizes.join(" ")),
        },
    );
    Ok(out)
}

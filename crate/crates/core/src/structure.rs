//! Periodic structure of elements, idempotents, power fibers and Green's H-classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::sgcore::{CayleyTable, Element, ElementSet};

/// Index and period of the monogenic subsemigroup `⟨x⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerProfile {
    pub element: Element,
    /// Least `m` with `x^(m+r) = x^m` for some `r ≥ 1`.
    pub index: usize,
    /// Least `r` with `x^(m+r) = x^m`.
    pub period: usize,
    /// The unique idempotent in `⟨x⟩`, namely `x^k` for the multiple `k` of the
    /// period lying in `[index, index + period - 1]`.
    pub idempotent_power: Element,
}

impl PowerProfile {
    /// Exponent `k` with `x^k` idempotent.
    pub fn idempotent_exponent(&self) -> usize {
        self.index.div_ceil(self.period) * self.period
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("element {0} is not idempotent")]
    NotIdempotent(Element),
}

/// `E(S) = {x : xx = x}`.
pub fn idempotents(table: &CayleyTable) -> ElementSet {
    ElementSet::from_elements(
        table.order(),
        table.elements().filter(|&x| table.is_idempotent(x)),
    )
}

/// Walks `x, x², x³, …` until a power repeats; the first repeat fixes index and period.
pub fn power_profile(table: &CayleyTable, x: Element) -> PowerProfile {
    let mut first_seen = vec![0usize; table.order()];
    let mut powers = Vec::new();
    let mut current = x;
    let mut k = 1;
    loop {
        let seen = first_seen[current.index()];
        if seen != 0 {
            let (index, period) = (seen, k - seen);
            let exponent = index.div_ceil(period) * period;
            return PowerProfile {
                element: x,
                index,
                period,
                idempotent_power: powers[exponent - 1],
            };
        }
        first_seen[current.index()] = k;
        powers.push(current);
        current = table.mul(current, x);
        k += 1;
    }
}

pub fn power_profiles(table: &CayleyTable) -> Vec<PowerProfile> {
    table.elements().map(|x| power_profile(table, x)).collect()
}

/// Least `k ≥ 1` with `x^k = target`, if any power of `x` hits `target`.
pub fn least_power_reaching(table: &CayleyTable, x: Element, target: Element) -> Option<usize> {
    // The powers of x take at most `order` distinct values before cycling.
    let mut current = x;
    for k in 1..=table.order() {
        if current == target {
            return Some(k);
        }
        current = table.mul(current, x);
    }
    None
}

/// The partition `S = ⋃_{e ∈ E(S)} √∞(e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberDecomposition {
    pub fibers: BTreeMap<Element, ElementSet>,
}

impl FiberDecomposition {
    pub fn fiber(&self, e: Element) -> Option<&ElementSet> {
        self.fibers.get(&e)
    }

    pub fn sizes(&self) -> BTreeMap<Element, usize> {
        self.fibers.iter().map(|(&e, f)| (e, f.len())).collect()
    }
}

/// `√∞(e) = {x : x^n = e for some n}`, keyed by each element's idempotent power.
pub fn fiber_decomposition(table: &CayleyTable) -> FiberDecomposition {
    let mut fibers: BTreeMap<Element, ElementSet> = BTreeMap::new();
    for x in table.elements() {
        let e = power_profile(table, x).idempotent_power;
        fibers
            .entry(e)
            .or_insert_with(|| table.empty_set())
            .insert(x);
    }
    FiberDecomposition { fibers }
}

/// `xS¹ = {x} ∪ xS`.
pub fn principal_right_ideal(table: &CayleyTable, x: Element) -> ElementSet {
    let mut ideal = ElementSet::from_elements(table.order(), table.row(x).iter().copied());
    ideal.insert(x);
    ideal
}

/// `S¹x = {x} ∪ Sx`.
pub fn principal_left_ideal(table: &CayleyTable, x: Element) -> ElementSet {
    let mut ideal =
        ElementSet::from_elements(table.order(), table.elements().map(|y| table.mul(y, x)));
    ideal.insert(x);
    ideal
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HClass {
    pub representative: Element,
    pub members: ElementSet,
    /// `xS¹` for the representative.
    pub right_ideal: ElementSet,
    /// `S¹x` for the representative.
    pub left_ideal: ElementSet,
}

/// `H_x = {y : yS¹ = xS¹ and S¹y = S¹x}`.
pub fn h_class(table: &CayleyTable, x: Element) -> HClass {
    let right = principal_right_ideal(table, x);
    let left = principal_left_ideal(table, x);
    let members = ElementSet::from_elements(
        table.order(),
        table.elements().filter(|&y| {
            principal_right_ideal(table, y) == right && principal_left_ideal(table, y) == left
        }),
    );
    HClass {
        representative: x,
        members,
        right_ideal: right,
        left_ideal: left,
    }
}

/// All H-classes, each represented by its least member, in ascending order.
pub fn h_classes(table: &CayleyTable) -> Vec<HClass> {
    let rights: Vec<ElementSet> = table
        .elements()
        .map(|x| principal_right_ideal(table, x))
        .collect();
    let lefts: Vec<ElementSet> = table
        .elements()
        .map(|x| principal_left_ideal(table, x))
        .collect();
    let mut assigned = table.empty_set();
    let mut classes = Vec::new();
    for x in table.elements() {
        if assigned.contains(x) {
            continue;
        }
        let i = x.index();
        let members = ElementSet::from_elements(
            table.order(),
            table
                .elements()
                .filter(|y| rights[y.index()] == rights[i] && lefts[y.index()] == lefts[i]),
        );
        assigned = assigned.union(&members);
        classes.push(HClass {
            representative: x,
            members,
            right_ideal: rights[i].clone(),
            left_ideal: lefts[i].clone(),
        });
    }
    classes
}

/// Why an H-class at an idempotent fails to be a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDefect {
    NotClosed {
        x: Element,
        y: Element,
        product: Element,
    },
    NotNeutral {
        x: Element,
        left: Element,
        right: Element,
    },
    NoInverse {
        x: Element,
    },
}

/// First failure of the group axioms on `H_e` (closure, `e` neutral, inverses).
pub fn hclass_group_defect(
    table: &CayleyTable,
    e: Element,
) -> Result<Option<GroupDefect>, StructureError> {
    if !table.is_idempotent(e) {
        return Err(StructureError::NotIdempotent(e));
    }
    let members = h_class(table, e).members;
    for x in &members {
        for y in &members {
            let product = table.mul(x, y);
            if !members.contains(product) {
                return Ok(Some(GroupDefect::NotClosed { x, y, product }));
            }
        }
    }
    for x in &members {
        let (left, right) = (table.mul(e, x), table.mul(x, e));
        if left != x || right != x {
            return Ok(Some(GroupDefect::NotNeutral { x, left, right }));
        }
    }
    for x in &members {
        let invertible = members
            .iter()
            .any(|y| table.mul(x, y) == e && table.mul(y, x) == e);
        if !invertible {
            return Ok(Some(GroupDefect::NoInverse { x }));
        }
    }
    Ok(None)
}

/// Whether `H_e` is a group with identity `e` (always true in a semigroup).
pub fn is_group_hclass(table: &CayleyTable, e: Element) -> Result<bool, StructureError> {
    Ok(hclass_group_defect(table, e)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{monogenic, stock, Family};

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn idempotent_sets() {
        assert_eq!(idempotents(&stock(Family::LeftZero, 3)), set(3, &[0, 1, 2]));
        assert_eq!(idempotents(&stock(Family::Zero, 4)), set(4, &[0]));
        assert_eq!(idempotents(&stock(Family::CyclicGroup, 5)), set(5, &[0]));
    }

    #[test]
    fn profiles() {
        let lz = stock(Family::LeftZero, 3);
        let p = power_profile(&lz, e(1));
        assert_eq!((p.index, p.period, p.idempotent_power), (1, 1, e(1)));

        // Element a-1 of monogenic(m, r) is x^a.
        let m = monogenic(3, 4);
        let p = power_profile(&m, e(0));
        assert_eq!((p.index, p.period, p.idempotent_power), (3, 4, e(3)));
        assert_eq!(p.idempotent_exponent(), 4);

        let z = stock(Family::Zero, 3);
        let p = power_profile(&z, e(2));
        assert_eq!((p.index, p.period, p.idempotent_power), (2, 1, e(0)));
    }

    #[test]
    fn fibers() {
        let g = fiber_decomposition(&stock(Family::CyclicGroup, 4));
        assert_eq!(g.fibers.len(), 1);
        assert_eq!(g.fiber(e(0)).unwrap().len(), 4);

        let z = fiber_decomposition(&stock(Family::Zero, 4));
        assert_eq!(z.fibers.len(), 1);
        assert_eq!(z.fiber(e(0)), Some(&set(4, &[0, 1, 2, 3])));

        let lz = fiber_decomposition(&stock(Family::LeftZero, 3));
        assert_eq!(lz.fibers.len(), 3);
        assert!(lz
            .fibers
            .iter()
            .all(|(&k, f)| *f == ElementSet::singleton(3, k)));
    }

    #[test]
    fn fiber_membership_matches_existential_definition() {
        for t in [monogenic(3, 4), monogenic(5, 2), stock(Family::Zero, 4)] {
            let fd = fiber_decomposition(&t);
            for (&idem, fiber) in &fd.fibers {
                for x in t.elements() {
                    assert_eq!(
                        fiber.contains(x),
                        least_power_reaching(&t, x, idem).is_some()
                    );
                }
            }
        }
    }

    #[test]
    fn principal_ideals() {
        let g = stock(Family::CyclicGroup, 5);
        assert_eq!(principal_right_ideal(&g, e(0)), g.full_set());
        let z = stock(Family::Zero, 3);
        assert_eq!(principal_right_ideal(&z, e(2)), set(3, &[0, 2]));
        let lz = stock(Family::LeftZero, 3);
        assert_eq!(principal_right_ideal(&lz, e(1)), set(3, &[1]));
        assert_eq!(principal_left_ideal(&lz, e(1)), lz.full_set());
    }

    #[test]
    fn h_class_examples() {
        let g = stock(Family::CyclicGroup, 6);
        assert_eq!(h_class(&g, e(4)).members, g.full_set());
        let lz = stock(Family::LeftZero, 3);
        assert_eq!(h_class(&lz, e(2)).members, set(3, &[2]));
        let z = stock(Family::Zero, 3);
        assert_eq!(h_class(&z, e(0)).members, set(3, &[0]));
        assert_eq!(h_classes(&z).len(), 3);
    }

    #[test]
    fn h_classes_partition_monogenic() {
        // In monogenic(3,4) the kernel {x³,x⁴,x⁵,x⁶} is the group H-class.
        let m = monogenic(3, 4);
        let classes = h_classes(&m);
        let kernel = set(6, &[2, 3, 4, 5]);
        assert!(classes.iter().any(|c| c.members == kernel));
        assert_eq!(h_class(&m, e(3)).members, kernel);
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn group_hclasses() {
        let g = stock(Family::CyclicGroup, 6);
        assert_eq!(is_group_hclass(&g, e(0)), Ok(true));
        assert_eq!(h_class(&g, e(0)).members.len(), 6);
        assert_eq!(is_group_hclass(&stock(Family::Zero, 3), e(0)), Ok(true));
        assert_eq!(
            is_group_hclass(&stock(Family::Zero, 3), e(1)),
            Err(StructureError::NotIdempotent(e(1)))
        );
    }
}

//! Associativity checking.
//!
//! Small tables are checked exhaustively. Larger ones go through Light's test: the set
//! of elements `a` with `(x·a)·y = x·(a·y)` for all `x, y` is closed under the product,
//! so it suffices to test the members of a generating set (computed by magma closure,
//! which is meaningful even before associativity is known). Only when that test fails
//! do we pay for a full scan to locate the lexicographically least failing triple.

use super::set::{Element, ElementSet};
use super::table::CayleyTable;

/// Orders up to this bound skip Light's test and scan all triples directly.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Associativity {
    Associative,
    /// Lexicographically least `(x, y, z)` with `(xy)z ≠ x(yz)`.
    Counterexample(Element, Element, Element),
}

impl Associativity {
    pub fn is_associative(self) -> bool {
        self == Associativity::Associative
    }
}

pub fn validate_associativity(table: &CayleyTable) -> Associativity {
    if table.order() <= EXHAUSTIVE_ORDER_LIMIT {
        return least_counterexample(table);
    }
    let generators = generating_set(table);
    if lights_test(table, &generators) {
        Associativity::Associative
    } else {
        least_counterexample(table)
    }
}

/// Full `O(n³)` scan in lexicographic order.
pub fn least_counterexample(table: &CayleyTable) -> Associativity {
    for x in table.elements() {
        for y in table.elements() {
            let xy = table.mul(x, y);
            for z in table.elements() {
                if table.mul(xy, z) != table.mul(x, table.mul(y, z)) {
                    return Associativity::Counterexample(x, y, z);
                }
            }
        }
    }
    Associativity::Associative
}

/// True iff every generator `a` satisfies `(x·a)·y = x·(a·y)` for all `x, y`.
pub fn lights_test(table: &CayleyTable, generators: &[Element]) -> bool {
    generators.iter().all(|&a| {
        table.elements().all(|x| {
            let xa = table.mul(x, a);
            table
                .elements()
                .all(|y| table.mul(xa, y) == table.mul(x, table.mul(a, y)))
        })
    })
}

/// Greedy generating set: repeatedly adjoin the least element outside the closure.
pub fn generating_set(table: &CayleyTable) -> Vec<Element> {
    let mut generators = Vec::new();
    let mut closure = table.empty_set();
    while let Some(next) = table.elements().find(|&x| !closure.contains(x)) {
        generators.push(next);
        closure = magma_closure(table, &generators);
    }
    generators
}

/// Smallest subset containing `seeds` and closed under the product.
pub fn magma_closure(table: &CayleyTable, seeds: &[Element]) -> ElementSet {
    let mut members = ElementSet::from_elements(table.order(), seeds.iter().copied());
    let mut list: Vec<Element> = members.to_vec();
    let mut processed = 0;
    // Every pair (a, b) with max(pos a, pos b) < processed has been multiplied.
    while processed < list.len() {
        let b = list[processed];
        for k in 0..=processed {
            let a = list[k];
            for p in [table.mul(a, b), table.mul(b, a)] {
                if members.insert(p) {
                    list.push(p);
                }
            }
        }
        processed += 1;
    }
    members
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{monogenic, stock, Family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    #[test]
    fn tiny_tables() {
        let one = CayleyTable::from_rows(&[vec![0]]).unwrap();
        assert!(validate_associativity(&one).is_associative());
        let lz = CayleyTable::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(validate_associativity(&lz).is_associative());
    }

    #[test]
    fn least_failing_triple() {
        // 0·0=1, everything else 0: (0·0)·1 = 1·1 = 0 but 0·(0·1) = 0·0 = 1.
        let t = CayleyTable::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            validate_associativity(&t),
            Associativity::Counterexample(e(0), e(0), e(1))
        );
    }

    #[test]
    fn closure_is_closed() {
        let m = monogenic(3, 4);
        assert_eq!(magma_closure(&m, &[e(0)]), m.full_set());
        assert_eq!(generating_set(&m), vec![e(0)]);
        assert_eq!(generating_set(&stock(Family::LeftZero, 5)).len(), 5);
    }

    #[test]
    fn lights_test_on_large_tables() {
        let big = stock(Family::CyclicGroup, 40);
        assert_eq!(generating_set(&big), vec![e(0), e(1)]);
        assert!(validate_associativity(&big).is_associative());

        // Corrupt one entry of a large cyclic group; Light's path must find the
        // same least triple as the exhaustive scan.
        let mut flat = big.flat();
        flat[5 * 40 + 7] = 3;
        let bad = CayleyTable::from_flat(40, flat).unwrap();
        let found = validate_associativity(&bad);
        assert!(!found.is_associative());
        assert_eq!(found, least_counterexample(&bad));
    }

    #[test]
    fn lights_test_agrees_with_scan_on_random_magmas() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(17..=20);
            // Mostly left-zero rows with a few random perturbations.
            let mut flat: Vec<usize> = (0..n * n).map(|k| k / n).collect();
            for _ in 0..rng.random_range(0..3) {
                let k = rng.random_range(0..n * n);
                flat[k] = rng.random_range(0..n);
            }
            let t = CayleyTable::from_flat(n, flat).unwrap();
            assert_eq!(validate_associativity(&t), least_counterexample(&t));
        }
    }
}

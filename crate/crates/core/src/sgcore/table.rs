use std::collections::HashSet;

use super::assoc::{validate_associativity, Associativity};
use super::set::{Element, ElementSet};
use super::TableError;

/// Multiplication table of a finite magma, usually a semigroup.
///
/// Entry `(x, y)` holds the product `x·y`. Construction checks shape and range only;
/// associativity is established separately by [`validate_associativity`] (or in one
/// step via [`CayleyTable::semigroup`]). Every analysis in this crate assumes an
/// associative table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    products: Vec<Element>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Builds a table from row-major products, checking arity and entry range.
    pub fn from_flat(order: usize, products: Vec<usize>) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::Empty);
        }
        if products.len() != order * order {
            return Err(TableError::WrongSize {
                order,
                found: products.len(),
            });
        }
        if let Some(pos) = products.iter().position(|&v| v >= order) {
            return Err(TableError::EntryOutOfRange {
                row: pos / order,
                column: pos % order,
                value: products[pos],
                order,
            });
        }
        Ok(CayleyTable {
            order,
            products: products.into_iter().map(Element::new).collect(),
            labels: None,
        })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let order = rows.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            let entries = entries.as_ref();
            if entries.len() != order {
                return Err(TableError::WrongArity {
                    row,
                    expected: order,
                    found: entries.len(),
                });
            }
            flat.extend_from_slice(entries);
        }
        Self::from_flat(order, flat)
    }

    /// Builds a table from a product function on indices.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let flat = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::from_flat(order, flat)
    }

    /// Shape-checked table that is additionally verified associative.
    pub fn semigroup<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        Self::from_rows(rows)?.validated()
    }

    /// Returns `self` if the operation is associative.
    pub fn validated(self) -> Result<Self, TableError> {
        match validate_associativity(&self) {
            Associativity::Associative => Ok(self),
            Associativity::Counterexample(x, y, z) => Err(TableError::NotAssociative { x, y, z }),
        }
    }

    /// Attaches display labels. Labels must be distinct, non-empty and free of whitespace.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, TableError> {
        if labels.len() != self.order {
            return Err(TableError::LabelCount {
                expected: self.order,
                found: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(TableError::InvalidLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(TableError::DuplicateLabel(label.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.products[x.index() * self.order + y.index()]
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.order).map(Element::new)
    }

    pub fn row(&self, x: Element) -> &[Element] {
        let start = x.index() * self.order;
        &self.products[start..start + self.order]
    }

    /// Row-major products as plain indices.
    pub fn flat(&self) -> Vec<usize> {
        self.products.iter().map(|e| e.index()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(labels) => labels[x.index()].clone(),
            None => x.index().to_string(),
        }
    }

    /// Resolves a token to an element: an exact label match wins, otherwise the token
    /// is read as a 0-based index.
    pub fn resolve(&self, token: &str) -> Option<Element> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == token) {
                return Some(Element::new(i));
            }
        }
        token
            .parse::<usize>()
            .ok()
            .filter(|&i| i < self.order)
            .map(Element::new)
    }

    pub fn contains(&self, x: Element) -> bool {
        x.index() < self.order
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order)
    }

    /// Table of the opposite operation `x∘y = y·x`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.order;
        let products = (0..n * n)
            .map(|k| self.products[(k % n) * n + k / n])
            .collect();
        CayleyTable {
            order: n,
            products,
            labels: self.labels.clone(),
        }
    }

    /// `x^k` for `k ≥ 1`.
    pub fn pow(&self, x: Element, k: usize) -> Element {
        assert!(k >= 1, "exponents start at 1");
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }
}

/// The unique two-sided identity, if the table has one.
pub fn has_identity(table: &CayleyTable) -> Option<Element> {
    table.elements().find(|&e| {
        table
            .elements()
            .all(|x| table.mul(e, x) == x && table.mul(x, e) == x)
    })
}

/// `S¹`: the table itself when it already has an identity, otherwise the table with a
/// fresh identity appended as element `n`.
pub fn adjoin_identity(table: &CayleyTable) -> CayleyTable {
    if has_identity(table).is_some() {
        return table.clone();
    }
    let n = table.order();
    let one = n;
    let extended = CayleyTable::from_fn(n + 1, |x, y| {
        if x == one {
            y
        } else if y == one {
            x
        } else {
            table.mul(Element::new(x), Element::new(y)).index()
        }
    })
    .expect("adjoined table is in range");
    match table.labels() {
        Some(labels) => {
            let mut fresh = String::from("1");
            while labels.contains(&fresh) {
                fresh.push('\'');
            }
            let mut labels = labels.to_vec();
            labels.push(fresh);
            extended
                .with_labels(labels)
                .expect("fresh identity label is distinct")
        }
        None => extended,
    }
}

/// `xA = {xa : a ∈ A}`.
pub fn left_translate(table: &CayleyTable, x: Element, set: &ElementSet) -> ElementSet {
    ElementSet::from_elements(table.order(), set.iter().map(|a| table.mul(x, a)))
}

/// `Ax = {ax : a ∈ A}`.
pub fn right_translate(table: &CayleyTable, set: &ElementSet, x: Element) -> ElementSet {
    ElementSet::from_elements(table.order(), set.iter().map(|a| table.mul(a, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{stock, Family};

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    #[test]
    fn rejects_malformed_tables() {
        assert_eq!(
            CayleyTable::from_rows(&[vec![0, 2], vec![0, 0]]),
            Err(TableError::EntryOutOfRange {
                row: 0,
                column: 1,
                value: 2,
                order: 2
            })
        );
        assert!(matches!(
            CayleyTable::from_rows(&[vec![0, 0], vec![0]]),
            Err(TableError::WrongArity { row: 1, .. })
        ));
        assert_eq!(CayleyTable::from_flat(0, vec![]), Err(TableError::Empty));
        let t = CayleyTable::from_rows(&[vec![0]]).unwrap();
        assert!(matches!(
            t.clone().with_labels(vec!["a b".into()]),
            Err(TableError::InvalidLabel(_))
        ));
        let t2 = CayleyTable::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            t2.with_labels(vec!["a".into(), "a".into()]),
            Err(TableError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn identity_detection() {
        assert_eq!(has_identity(&stock(Family::CyclicGroup, 3)), Some(e(0)));
        assert_eq!(has_identity(&stock(Family::LeftZero, 2)), None);
        assert_eq!(has_identity(&stock(Family::Zero, 1)), Some(e(0)));
    }

    #[test]
    fn adjoin_identity_to_left_zero() {
        let s1 = adjoin_identity(&stock(Family::LeftZero, 2));
        assert_eq!(s1.order(), 3);
        for x in s1.elements() {
            assert_eq!(s1.mul(e(2), x), x);
            assert_eq!(s1.mul(x, e(2)), x);
        }
        assert_eq!(s1.mul(e(0), e(1)), e(0));
        assert_eq!(s1.mul(e(1), e(0)), e(1));
    }

    #[test]
    fn adjoin_identity_keeps_monoids() {
        let g = stock(Family::CyclicGroup, 3);
        assert_eq!(adjoin_identity(&g), g);
    }

    #[test]
    fn adjoin_identity_to_zero_semigroup() {
        let z = stock(Family::Zero, 2);
        let s1 = adjoin_identity(&z);
        assert_eq!(s1.flat(), vec![0, 0, 0, 0, 0, 1, 0, 1, 2]);
        assert!(s1.clone().validated().is_ok());
    }

    #[test]
    fn adjoin_identity_label_is_fresh() {
        let t = CayleyTable::from_rows(&[vec![0, 0], vec![0, 0]])
            .unwrap()
            .with_labels(vec!["1".into(), "a".into()])
            .unwrap();
        let s1 = adjoin_identity(&t);
        assert_eq!(s1.labels().unwrap()[2], "1'");
    }

    #[test]
    fn translations() {
        let lz = stock(Family::LeftZero, 3);
        let all = lz.full_set();
        assert_eq!(
            left_translate(&lz, e(2), &all),
            ElementSet::from_indices(3, [2])
        );
        assert_eq!(right_translate(&lz, &all, e(2)), all);
        let z = stock(Family::Zero, 3);
        assert_eq!(
            left_translate(&z, e(1), &ElementSet::from_indices(3, [1, 2])),
            ElementSet::from_indices(3, [0])
        );
        let g = stock(Family::CyclicGroup, 4);
        assert_eq!(
            left_translate(&g, e(0), &ElementSet::singleton(4, e(0))),
            ElementSet::singleton(4, e(0))
        );
    }

    #[test]
    fn resolve_prefers_labels() {
        let t = CayleyTable::from_rows(&[vec![0, 0], vec![0, 0]])
            .unwrap()
            .with_labels(vec!["1".into(), "0".into()])
            .unwrap();
        assert_eq!(t.resolve("1"), Some(e(0)));
        assert_eq!(t.resolve("0"), Some(e(1)));
        assert_eq!(t.resolve("7"), None);
    }
}

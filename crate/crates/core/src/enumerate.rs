//! Semigroups of small order up to isomorphism (optionally also anti-isomorphism),
//! canonical forms, and random semigroups sampled as transformation closures.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::sgcore::CayleyTable;

/// Largest order the exhaustive enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 4;
/// Largest order [`canonical_form`] accepts (it walks all `n!` relabelings).
pub const MAX_CANONICAL_ORDER: usize = 8;
/// Largest order [`random_semigroup`] accepts.
pub const MAX_RANDOM_ORDER: usize = 64;
const SAMPLING_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("order {order} is outside the supported range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("no semigroup of order at most {order} sampled within {attempts} attempts")]
    SamplingBudget { order: usize, attempts: usize },
    #[error("unknown symmetry `{0}` (expected iso or iso-anti)")]
    UnknownSymmetry(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// Up to relabeling.
    Iso,
    /// Up to relabeling and transposition.
    IsoAnti,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Iso => "iso",
            Symmetry::IsoAnti => "iso-anti",
        })
    }
}

impl FromStr for Symmetry {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, EnumerateError> {
        match s {
            "iso" => Ok(Symmetry::Iso),
            "iso-anti" | "iso_anti" | "iso_and_anti" | "iso-and-anti" => Ok(Symmetry::IsoAnti),
            other => Err(EnumerateError::UnknownSymmetry(other.to_string())),
        }
    }
}

/// Lexicographically least row-major table over a symmetry orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub order: usize,
    pub flat: Vec<u8>,
}

impl CanonicalForm {
    pub fn to_table(&self) -> CayleyTable {
        CayleyTable::from_flat(self.order, self.flat.iter().map(|&v| v as usize).collect())
            .expect("canonical forms are in range")
    }

    /// Short hex digest, used to name exported files.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        hasher.update(&self.flat);
        hex::encode(&hasher.finalize()[..8])
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn extend(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Table relabeled by `p`: `p(x)·p(y) = p(x·y)`.
fn relabel(flat: &[u8], n: usize, p: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            out[p[x] as usize * n + p[y] as usize] = p[flat[x * n + y] as usize];
        }
    }
    out
}

fn transpose_flat(flat: &[u8], n: usize) -> Vec<u8> {
    (0..n * n).map(|k| flat[(k % n) * n + k / n]).collect()
}

fn canonical_flat(flat: &[u8], n: usize, perms: &[Vec<u8>], symmetry: Symmetry) -> Vec<u8> {
    let mut best = relabel(flat, n, &perms[0]);
    let transposed = (symmetry == Symmetry::IsoAnti).then(|| transpose_flat(flat, n));
    for source in std::iter::once(flat).chain(transposed.as_deref()) {
        for p in perms {
            let candidate = relabel(source, n, p);
            if candidate < best {
                best = candidate;
            }
        }
    }
    best
}

/// Panics if the order exceeds [`MAX_CANONICAL_ORDER`].
pub fn canonical_form(table: &CayleyTable, symmetry: Symmetry) -> CanonicalForm {
    let n = table.order();
    assert!(
        n <= MAX_CANONICAL_ORDER,
        "canonical forms are limited to order {MAX_CANONICAL_ORDER}"
    );
    let flat: Vec<u8> = table.flat().into_iter().map(|v| v as u8).collect();
    CanonicalForm {
        order: n,
        flat: canonical_flat(&flat, n, &permutations(n), symmetry),
    }
}

const UNSET: u8 = u8::MAX;

/// Backtracking state: a partially filled table, checked for associativity on every
/// triple whose four products are already known.
struct Search<'a> {
    n: usize,
    cells: Vec<u8>,
    perms: &'a [Vec<u8>],
    symmetry: Symmetry,
}

impl Search<'_> {
    fn consistent(&self) -> bool {
        let n = self.n;
        let c = &self.cells;
        for a in 0..n {
            for b in 0..n {
                let ab = c[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for z in 0..n {
                    let bz = c[b * n + z];
                    if bz == UNSET {
                        continue;
                    }
                    let left = c[ab as usize * n + z];
                    let right = c[a * n + bz as usize];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize, out: &mut Vec<CayleyTable>) {
        let n = self.n;
        if pos == n * n {
            if canonical_flat(&self.cells, n, self.perms, self.symmetry) == self.cells {
                out.push(
                    CayleyTable::from_flat(n, self.cells.iter().map(|&v| v as usize).collect())
                        .expect("in range"),
                );
            }
            return;
        }
        for v in 0..n as u8 {
            self.cells[pos] = v;
            if self.consistent() {
                self.run(pos + 1, out);
            }
        }
        self.cells[pos] = UNSET;
    }
}

/// One canonical representative per class, in lexicographic order of their tables.
///
/// The search tree is split on the first cell and the branches run on the current
/// rayon pool; results are merged in branch order.
pub fn enumerate_semigroups(
    n: usize,
    symmetry: Symmetry,
) -> Result<Vec<CayleyTable>, EnumerateError> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(EnumerateError::OrderOutOfRange {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    let perms = permutations(n);
    let branches: Vec<Vec<CayleyTable>> = (0..n as u8)
        .into_par_iter()
        .map(|first| {
            let mut search = Search {
                n,
                cells: vec![UNSET; n * n],
                perms: &perms,
                symmetry,
            };
            search.cells[0] = first;
            let mut out = Vec::new();
            if search.consistent() {
                search.run(1, &mut out);
            }
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

/// A random semigroup of order at most `max_order`: the closure of a few random
/// self-maps of a small set under composition, relabeled by a random permutation.
/// Deterministic in `seed`.
pub fn random_semigroup(max_order: usize, seed: u64) -> Result<CayleyTable, EnumerateError> {
    if !(1..=MAX_RANDOM_ORDER).contains(&max_order) {
        return Err(EnumerateError::OrderOutOfRange {
            order: max_order,
            max: MAX_RANDOM_ORDER,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_degree = if max_order <= 8 { 4 } else { 5 };
    for _ in 0..SAMPLING_ATTEMPTS {
        // Degree 1 only ever yields the trivial semigroup, which degree 2 covers anyway.
        let degree = rng.random_range(2..=max_degree);
        let gen_count = rng.random_range(1..=3);
        let generators: Vec<Vec<u8>> = (0..gen_count)
            .map(|_| {
                (0..degree)
                    .map(|_| rng.random_range(0..degree) as u8)
                    .collect()
            })
            .collect();
        if let Some(elements) = transformation_closure(&generators, max_order) {
            let mut labels: Vec<usize> = (0..elements.len()).collect();
            labels.shuffle(&mut rng);
            return Ok(composition_table(&elements, &labels));
        }
    }
    Err(EnumerateError::SamplingBudget {
        order: max_order,
        attempts: SAMPLING_ATTEMPTS,
    })
}

/// Closure under composition, or `None` once it exceeds `limit` elements.
fn transformation_closure(generators: &[Vec<u8>], limit: usize) -> Option<Vec<Vec<u8>>> {
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut elements: Vec<Vec<u8>> = Vec::new();
    for g in generators {
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elements.len() {
        if elements.len() > limit {
            return None;
        }
        for g in generators {
            let product = compose(&elements[i], g);
            if !index.contains_key(&product) {
                index.insert(product.clone(), elements.len());
                elements.push(product);
            }
        }
        i += 1;
    }
    (elements.len() <= limit).then_some(elements)
}

/// `f` then `g`.
fn compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    f.iter().map(|&i| g[i as usize]).collect()
}

fn composition_table(elements: &[Vec<u8>], labels: &[usize]) -> CayleyTable {
    let index: HashMap<&[u8], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let n = elements.len();
    let mut flat = vec![0; n * n];
    for (i, f) in elements.iter().enumerate() {
        for (j, g) in elements.iter().enumerate() {
            let k = index[compose(f, g).as_slice()];
            flat[labels[i] * n + labels[j]] = labels[k];
        }
    }
    CayleyTable::from_flat(n, flat).expect("closure is closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgcore::validate_associativity;
    use crate::witness::{stock, Family};

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn canonical_form_examples() {
        let one = stock(Family::Zero, 1);
        assert_eq!(canonical_form(&one, Symmetry::Iso).to_table(), one);

        let lz = stock(Family::LeftZero, 2);
        let swapped = CayleyTable::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            canonical_form(&lz, Symmetry::Iso),
            canonical_form(&swapped, Symmetry::Iso)
        );
        let rz = stock(Family::RightZero, 2);
        assert_eq!(
            canonical_form(&lz, Symmetry::IsoAnti),
            canonical_form(&rz, Symmetry::IsoAnti)
        );
        assert_ne!(
            canonical_form(&lz, Symmetry::Iso),
            canonical_form(&rz, Symmetry::Iso)
        );
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let t = crate::witness::monogenic(2, 3);
        for sym in [Symmetry::Iso, Symmetry::IsoAnti] {
            let c = canonical_form(&t, sym);
            assert_eq!(canonical_form(&c.to_table(), sym), c);
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_semigroups(1, Symmetry::Iso).unwrap().len(), 1);
        assert_eq!(enumerate_semigroups(2, Symmetry::Iso).unwrap().len(), 5);
        assert_eq!(enumerate_semigroups(2, Symmetry::IsoAnti).unwrap().len(), 4);
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            enumerate_semigroups(5, Symmetry::Iso),
            Err(EnumerateError::OrderOutOfRange { order: 5, .. })
        ));
        assert!(enumerate_semigroups(0, Symmetry::Iso).is_err());
    }

    #[test]
    fn random_semigroups_are_deterministic_and_associative() {
        for seed in 0..50 {
            let a = random_semigroup(6, seed).unwrap();
            assert_eq!(a, random_semigroup(6, seed).unwrap());
            assert!(a.order() <= 6);
            assert!(validate_associativity(&a).is_associative());
        }
        let big = random_semigroup(64, 9).unwrap();
        assert!(validate_associativity(&big).is_associative());
        assert!(random_semigroup(65, 0).is_err());
    }

    #[test]
    fn symmetry_parsing() {
        assert_eq!("iso".parse::<Symmetry>(), Ok(Symmetry::Iso));
        assert_eq!("iso-anti".parse::<Symmetry>(), Ok(Symmetry::IsoAnti));
        assert!("anti".parse::<Symmetry>().is_err());
    }
}

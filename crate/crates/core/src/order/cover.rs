//! Minimum chain covers of finite semilattices via maximum bipartite matching.
//!
//! Each element is split into a left and a right copy and `x_left` is joined to `y_right`
//! whenever `x < y` in the natural order. A matching of size `k` glues the elements into
//! `n - k` ascending paths, each of which is a chain; a maximum matching gives the
//! fewest paths.

use crate::sgcore::{CayleyTable, Element, ElementSet};

use super::{is_semilattice, natural_leq, OrderError};

/// Strict comparabilities `x < y` of the natural order, as successor lists.
fn strict_upper_sets(table: &CayleyTable) -> Vec<Vec<usize>> {
    table
        .elements()
        .map(|x| {
            table
                .elements()
                .filter(|&y| x != y && natural_leq(table, x, y))
                .map(Element::index)
                .collect()
        })
        .collect()
}

fn try_augment(
    x: usize,
    upper: &[Vec<usize>],
    matched_left_of: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &y in &upper[x] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        let free = match matched_left_of[y] {
            None => true,
            Some(other) => try_augment(other, upper, matched_left_of, visited),
        };
        if free {
            matched_left_of[y] = Some(x);
            return true;
        }
    }
    false
}

/// Maximum matching in the split comparability graph, as `successor[x] = Some(y)`.
pub fn max_comparability_matching(table: &CayleyTable) -> Vec<Option<usize>> {
    let n = table.order();
    let upper = strict_upper_sets(table);
    let mut matched_left_of = vec![None; n];
    for x in 0..n {
        let mut visited = vec![false; n];
        try_augment(x, &upper, &mut matched_left_of, &mut visited);
    }
    let mut successor = vec![None; n];
    for (y, x) in matched_left_of.iter().enumerate() {
        if let Some(x) = *x {
            successor[x] = Some(y);
        }
    }
    successor
}

/// A minimum family of chains covering a semilattice, each listed bottom-up and the
/// family ordered by least element.
pub fn min_chain_cover(table: &CayleyTable) -> Result<Vec<ElementSet>, OrderError> {
    if !is_semilattice(table) {
        return Err(OrderError::NotSemilattice);
    }
    let n = table.order();
    let successor = max_comparability_matching(table);
    let mut has_predecessor = vec![false; n];
    for y in successor.iter().flatten() {
        has_predecessor[*y] = true;
    }
    let mut chains = Vec::new();
    for start in (0..n).filter(|&x| !has_predecessor[x]) {
        let mut chain = ElementSet::empty(n);
        let mut cursor = Some(start);
        while let Some(x) = cursor {
            chain.insert(Element::new(x));
            cursor = successor[x];
        }
        chains.push(chain);
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{is_chain, max_antichain_size};
    use crate::witness::{ex_truncate, stock, Family};

    fn linear_semilattice(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |x, y| x.min(y)).unwrap()
    }

    /// Smallest k such that S splits into k chains, by exhaustive labelling.
    fn brute_force_cover_size(table: &CayleyTable) -> usize {
        let n = table.order();
        (1..=n)
            .find(|&k| {
                let mut assignment = vec![0usize; n];
                loop {
                    let ok = (0..k).all(|c| {
                        let part =
                            ElementSet::from_indices(n, (0..n).filter(|&i| assignment[i] == c));
                        is_chain(table, &part)
                    });
                    if ok {
                        return true;
                    }
                    let mut i = 0;
                    loop {
                        if i == n {
                            return false;
                        }
                        assignment[i] += 1;
                        if assignment[i] < k {
                            break;
                        }
                        assignment[i] = 0;
                        i += 1;
                    }
                }
            })
            .unwrap()
    }

    #[test]
    fn linear_order_is_one_chain() {
        let cover = min_chain_cover(&linear_semilattice(6)).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover[0].len(), 6);
    }

    #[test]
    fn level_truncations() {
        for (max_level, expected) in [(4, 4), (6, 6)] {
            let t = ex_truncate(max_level).table;
            let cover = min_chain_cover(&t).unwrap();
            assert_eq!(cover.len(), expected);
            assert!(cover.iter().all(|c| is_chain(&t, c)));
            let union = cover.iter().fold(t.empty_set(), |acc, c| acc.union(c));
            assert_eq!(union, t.full_set());
            assert_eq!(cover.len(), max_antichain_size(&t).unwrap());
        }
        assert_eq!(brute_force_cover_size(&ex_truncate(4).table), 4);
    }

    #[test]
    fn brute_force_agrees_on_small_windows() {
        for max_level in 1..=4 {
            let t = ex_truncate(max_level).table;
            assert_eq!(
                min_chain_cover(&t).unwrap().len(),
                brute_force_cover_size(&t)
            );
        }
    }

    #[test]
    fn rejects_non_semilattices() {
        assert_eq!(
            min_chain_cover(&stock(Family::LeftZero, 2)),
            Err(OrderError::NotSemilattice)
        );
    }
}

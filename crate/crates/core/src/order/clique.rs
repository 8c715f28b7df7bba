//! Exact maximum clique by branch and bound.
//!
//! Candidates are kept in a fixed branch order (descending degree, ties by index).
//! At every node the candidate list is greedily colored from the back, so the largest
//! color used on a suffix bounds any clique inside that suffix; once the bound cannot
//! beat the incumbent, the remaining branches at that node are cut.

use crate::sgcore::{Element, ElementSet};

/// Node budget used when a caller does not specify one.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliqueError {
    #[error(
        "clique search exceeded its node budget of {budget}; best clique found so far: {best:?}"
    )]
    Budget { budget: u64, best: Vec<usize> },
}

/// Simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<ElementSet>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Graph {
            rows: vec![ElementSet::empty(vertex_count); vertex_count],
        }
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut g = Graph::new(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    /// Adds `u ~ v`; loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(Element::new(v));
            self.rows[v].insert(Element::new(u));
        }
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(Element::new(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter().map(Element::index)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| u < v)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.adjacent(u, v))
        })
    }

    /// A maximum clique, sorted ascending. The first maximum clique met in branch order
    /// is kept, which makes the result deterministic.
    pub fn max_clique(&self, budget: u64) -> Result<Vec<usize>, CliqueError> {
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut search = Search {
            graph: self,
            best: Vec::new(),
            current: Vec::new(),
            nodes: 0,
            budget,
        };
        let complete = search.expand(&order);
        let mut best = search.best;
        best.sort_unstable();
        if complete {
            Ok(best)
        } else {
            Err(CliqueError::Budget { budget, best })
        }
    }
}

struct Search<'g> {
    graph: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Returns false once the node budget is exhausted.
    fn expand(&mut self, candidates: &[usize]) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if candidates.is_empty() {
            return true;
        }
        let bounds = self.suffix_color_bounds(candidates);
        for (i, &v) in candidates.iter().enumerate() {
            if self.current.len() + bounds[i] <= self.best.len() {
                break;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.graph.adjacent(v, u))
                .collect();
            self.current.push(v);
            let ok = self.expand(&next);
            self.current.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// `bounds[i]` = colors used by a greedy coloring of `candidates[i..]`, built from
    /// the back so that every suffix is properly colored.
    fn suffix_color_bounds(&self, candidates: &[usize]) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut classes: Vec<ElementSet> = Vec::new();
        let mut bounds = vec![0; candidates.len()];
        let mut max_color = 0;
        for (i, &v) in candidates.iter().enumerate().rev() {
            let row = &self.graph.rows[v];
            let color = match classes.iter().position(|c| c.is_disjoint(row)) {
                Some(k) => k,
                None => {
                    classes.push(ElementSet::empty(n));
                    classes.len() - 1
                }
            };
            classes[color].insert(Element::new(v));
            max_color = max_color.max(color + 1);
            bounds[i] = max_color;
        }
        bounds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force_clique_number(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn complete_and_empty() {
        let k5 = Graph::from_edges(5, (0..5).flat_map(|u| (0..5).map(move |v| (u, v))));
        assert_eq!(k5.max_clique(DEFAULT_NODE_BUDGET), Ok(vec![0, 1, 2, 3, 4]));
        assert_eq!(Graph::new(6).max_clique(DEFAULT_NODE_BUDGET), Ok(vec![0]));
        assert_eq!(Graph::new(0).max_clique(DEFAULT_NODE_BUDGET), Ok(vec![]));
    }

    #[test]
    fn budget_is_reported_with_incumbent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = Graph::new(30);
        for u in 0..30 {
            for v in u + 1..30 {
                if rng.random_bool(0.7) {
                    g.add_edge(u, v);
                }
            }
        }
        match g.max_clique(5) {
            Err(CliqueError::Budget { budget: 5, best }) => assert!(g.is_clique(&best)),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn matches_brute_force_on_small_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(1..=12);
            let p = rng.random_range(0.1..0.9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let c = g.max_clique(DEFAULT_NODE_BUDGET).unwrap();
            assert!(g.is_clique(&c));
            assert_eq!(c.len(), brute_force_clique_number(&g));
        }
    }
}

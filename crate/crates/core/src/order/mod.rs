//! Chains, antichains and their compatibility graphs.
//!
//! A subset `A` is a chain when `xy ∈ {x, y}` for all `x, y ∈ A` (including `x = y`,
//! which forces every member to be idempotent) and an antichain when `xy ∉ {x, y}` for
//! all distinct `x, y ∈ A`. Both conditions are pairwise, so they are exactly the cliques
//! of a graph on the elements; the largest chain and antichain are found by exact
//! maximum-clique search.

mod clique;
mod cover;

use std::fmt::Write as _;

use serde::Serialize;

use crate::sgcore::{CayleyTable, Element, ElementSet};
use crate::structure::idempotents;

pub use clique::{CliqueError, Graph, DEFAULT_NODE_BUDGET};
pub use cover::{max_comparability_matching, min_chain_cover};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("operation requires a semilattice (commutative, all elements idempotent)")]
    NotSemilattice,
}

#[inline]
fn in_pair(p: Element, x: Element, y: Element) -> bool {
    p == x || p == y
}

pub fn is_chain(table: &CayleyTable, set: &ElementSet) -> bool {
    set.iter()
        .all(|x| set.iter().all(|y| in_pair(table.mul(x, y), x, y)))
}

pub fn is_antichain(table: &CayleyTable, set: &ElementSet) -> bool {
    set.iter().all(|x| {
        set.iter()
            .all(|y| x == y || !in_pair(table.mul(x, y), x, y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphMode {
    Chain,
    Antichain,
}

/// Graph whose cliques are the chains (or antichains) of size at least two; graph
/// vertex `i` stands for semigroup element `vertices[i]`.
#[derive(Clone, Debug)]
pub struct CompatGraph {
    pub mode: GraphMode,
    universe: usize,
    vertices: Vec<Element>,
    graph: Graph,
}

impl CompatGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn adjacent(&self, x: Element, y: Element) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(i), Some(j)) => self.graph.adjacent(i, j),
            _ => false,
        }
    }

    fn position(&self, x: Element) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    /// Edges as element pairs `(x, y)` with `x < y`.
    pub fn edges(&self) -> Vec<(Element, Element)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v)| (self.vertices[u], self.vertices[v]))
            .collect()
    }

    /// Adjacency lists keyed by element, for reports.
    pub fn adjacency_lists(&self) -> Vec<(Element, Vec<Element>)> {
        (0..self.vertex_count())
            .map(|i| {
                (
                    self.vertices[i],
                    self.graph.neighbors(i).map(|j| self.vertices[j]).collect(),
                )
            })
            .collect()
    }

    /// One `u v` line per edge, `u < v`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (x, y) in self.edges() {
            writeln!(out, "{x} {y}").unwrap();
        }
        out
    }

    /// A maximum clique as a set of elements.
    pub fn max_clique(&self, budget: u64) -> Result<ElementSet, CliqueError> {
        let to_elements = |vs: Vec<usize>| -> Vec<usize> {
            vs.into_iter().map(|v| self.vertices[v].index()).collect()
        };
        match self.graph.max_clique(budget) {
            Ok(vs) => Ok(ElementSet::from_indices(self.universe, to_elements(vs))),
            Err(CliqueError::Budget { budget, best }) => Err(CliqueError::Budget {
                budget,
                best: to_elements(best),
            }),
        }
    }
}

fn compat_graph(
    table: &CayleyTable,
    mode: GraphMode,
    vertices: Vec<Element>,
    edge: impl Fn(Element, Element) -> bool,
) -> CompatGraph {
    let mut graph = Graph::new(vertices.len());
    for (i, &x) in vertices.iter().enumerate() {
        for (j, &y) in vertices.iter().enumerate().skip(i + 1) {
            if edge(x, y) {
                graph.add_edge(i, j);
            }
        }
    }
    CompatGraph {
        mode,
        universe: table.order(),
        vertices,
        graph,
    }
}

/// Vertices are the idempotents; `x ~ y` iff both `xy` and `yx` lie in `{x, y}`.
pub fn chain_graph(table: &CayleyTable) -> CompatGraph {
    compat_graph(
        table,
        GraphMode::Chain,
        idempotents(table).to_vec(),
        |x, y| in_pair(table.mul(x, y), x, y) && in_pair(table.mul(y, x), x, y),
    )
}

/// Vertices are all elements; `x ~ y` iff neither `xy` nor `yx` lies in `{x, y}`.
pub fn antichain_graph(table: &CayleyTable) -> CompatGraph {
    compat_graph(
        table,
        GraphMode::Antichain,
        table.elements().collect(),
        |x, y| !in_pair(table.mul(x, y), x, y) && !in_pair(table.mul(y, x), x, y),
    )
}

pub fn compat_graph_for(table: &CayleyTable, mode: GraphMode) -> CompatGraph {
    match mode {
        GraphMode::Chain => chain_graph(table),
        GraphMode::Antichain => antichain_graph(table),
    }
}

pub fn max_chain_with_budget(table: &CayleyTable, budget: u64) -> Result<ElementSet, CliqueError> {
    chain_graph(table).max_clique(budget)
}

pub fn max_antichain_with_budget(
    table: &CayleyTable,
    budget: u64,
) -> Result<ElementSet, CliqueError> {
    antichain_graph(table).max_clique(budget)
}

/// A largest chain, found with the default node budget.
pub fn max_chain(table: &CayleyTable) -> Result<ElementSet, CliqueError> {
    max_chain_with_budget(table, DEFAULT_NODE_BUDGET)
}

/// A largest antichain, found with the default node budget.
pub fn max_antichain(table: &CayleyTable) -> Result<ElementSet, CliqueError> {
    max_antichain_with_budget(table, DEFAULT_NODE_BUDGET)
}

pub fn max_chain_size(table: &CayleyTable) -> Result<usize, CliqueError> {
    max_chain(table).map(|s| s.len())
}

pub fn max_antichain_size(table: &CayleyTable) -> Result<usize, CliqueError> {
    max_antichain(table).map(|s| s.len())
}

pub fn is_semilattice(table: &CayleyTable) -> bool {
    table.elements().all(|x| {
        table.is_idempotent(x) && table.elements().all(|y| table.mul(x, y) == table.mul(y, x))
    })
}

/// Natural order of a semilattice: `x ≤ y` iff `xy = yx = x`.
pub fn natural_leq(table: &CayleyTable, x: Element, y: Element) -> bool {
    table.mul(x, y) == x && table.mul(y, x) == x
}

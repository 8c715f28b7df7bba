//! Cayley-table representation of finite semigroups.

mod assoc;
mod set;
mod sgt;
mod table;

pub use assoc::{
    generating_set, least_counterexample, lights_test, magma_closure, validate_associativity,
    Associativity, EXHAUSTIVE_ORDER_LIMIT,
};
pub use set::{Element, ElementSet, Iter};
pub use sgt::{emit_sgt, parse_sgt, ParseError};
pub use table::{adjoin_identity, has_identity, left_translate, right_translate, CayleyTable};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("a table needs at least one element")]
    Empty,
    #[error("expected {} products for order {order}, found {found}", order * order)]
    WrongSize { order: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    WrongArity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row}, {column}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        column: usize,
        value: usize,
        order: usize,
    },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})")]
    NotAssociative { x: Element, y: Element, z: Element },
}

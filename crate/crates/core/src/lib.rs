//! Finite semigroups through chains and antichains.
//!
//! Tables are stored as Cayley tables ([`sgcore`]). On top of them the crate computes
//! idempotents, power fibers and H-classes ([`structure`]), maximum chains and
//! antichains ([`order`]), pair colorings with monochromatic extraction ([`ramsey`]),
//! and checks structural invariants over whole corpora ([`verify`]). [`witness`] builds
//! test semigroups and [`enumerate`] lists every semigroup of order at most four.

pub mod cli;
pub mod enumerate;
pub mod order;
pub mod ramsey;
pub mod sgcore;
pub mod structure;
pub mod verify;
pub mod witness;

//! Weyl group combinatorics for orbit closures in products of flag varieties
//! and in wonderful compactifications of adjoint groups.
//!
//! The crate is layered bottom-up: [`rootdata`] and [`weyl`] provide root
//! systems and explicit Weyl group tables, [`triples`] the diagram maps and the
//! twist machinery, [`pieces_gg`] and [`pieces_wonderful`] the pieces with
//! their dimensions and closure relations. [`verify`] collects exhaustive
//! invariant checks and [`cache`] persists group tables between runs.

pub mod cache;
pub mod pieces_gg;
pub mod pieces_wonderful;
pub mod poset;
pub mod rootdata;
pub mod triples;
pub mod verify;
pub mod weyl;

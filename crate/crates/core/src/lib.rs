//! Subgroups, subgroup lattices and fuzzy subgroup counts for the groups
//! `U_6n = <a, b | a^(2n) = b^3 = 1, bab = a>`.
//!
//! The fast path works entirely from closed forms: [`catalog`] lists every
//! (normal) subgroup symbolically, [`lattice`] orders them by inclusion and
//! [`chain`] counts ascending chains with arbitrary-precision integers. The
//! [`oracle`] module recomputes the same facts by brute force on the Cayley
//! table, and [`verify`] runs both sides against each other.

pub mod catalog;
pub mod chain;
pub mod error;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod verify;

pub use catalog::{Factorization, SubgroupDescriptor};
pub use chain::{ChainCounts, ChainCountsJson, ChainTable};
pub use error::{Error, Result};
pub use group::{CayleyTable, Element, GroupParams, DEFAULT_ORACLE_LIMIT};
pub use lattice::{Lattice, LatticeMode};

/// Whether per-node work inside a lattice build or a DP level runs on the
/// rayon pool. Results never depend on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

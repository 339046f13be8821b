//! Garside groups of finite type, given by a small primitive interface, with
//! cyclic sliding and a conjugacy solver built on it.

pub mod braid;
pub mod conjugacy;
pub mod contract;
pub mod element;
pub mod error;
pub mod oracle;
mod simple;
pub mod sliding;

pub use conjugacy::{Circuit, ConjugacyResult, Limits, RunStats, ScGraph, Solver, TransportCycle};
pub use contract::{Atom, GarsideContext, GarsideStructure, Side};
pub use element::{Element, NormalForm, Signed};
pub use error::{GarsideError, Result};

/// Hash map with a fixed hasher, so that the number of counted equality
/// probes, and with it every reported contract-call count, is reproducible.
pub(crate) type FixedHashMap<K, V> = std::collections::HashMap<
    K,
    V,
    std::hash::BuildHasherDefault<std::collections::hash_map::DefaultHasher>,
>;

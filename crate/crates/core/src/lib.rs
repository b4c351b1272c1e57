//! Finite posets, their filter lattices, cuttings and convex expansions.

pub mod bits;
pub mod error;
pub mod iso;
pub mod lattice;
pub mod poset;

pub use error::{Error, Result};
pub use lattice::{filter_lattice, DistLattice, IntervalRef};
pub use poset::{Antichain, FilterSet, Poset};
pub mod expansion;
pub mod invariants;
pub mod families;
pub mod generate;
pub mod io;
pub mod cli;

//! Finite loops given by Cayley tables: structural checks, derived
//! subloops, inner mappings and half-automorphisms.

pub mod catalog;
pub mod error;
pub mod halfmorph;
pub mod inner;
pub mod perm;
pub mod subloops;
pub mod suites;
pub mod table;

pub use catalog::CatalogEntry;
pub use error::{LoopError, Result};
pub use halfmorph::{HalfClass, HalfKind, HalfMap};
pub use perm::Perm;
pub use subloops::Subloop;
pub use table::{Element, LoopTable};

//! Ribbon graph complexes, necklace Lie bialgebras and traces of symplectic
//! derivations.

pub mod cache;
pub mod canon;
pub mod complex;
pub mod derivation;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod necklace;
pub mod perm;
pub mod ribbon;
pub mod state_sum;
pub mod verify;

pub use canon::{automorphisms, canonical_form, OrientedClass};
pub use error::{Error, Result};
pub use ribbon::RibbonGraph;

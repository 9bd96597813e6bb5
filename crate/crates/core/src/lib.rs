//! Permutation groups, conjugacy-class graphs and relational complexity.

pub mod bounds;
pub mod classgraph;
pub mod error;
pub mod group;
pub mod perm;
pub mod relcomplex;
pub mod verify;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;

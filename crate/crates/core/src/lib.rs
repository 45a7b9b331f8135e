#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod classalg;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod ffield;
pub mod group;
pub mod groupspec;
pub mod named;
pub mod perm;
pub mod semilinear;
pub mod verify;

pub use classalg::{ClassPartition, NormalSubset};
pub use error::{Error, Result};
pub use groupspec::GroupSpec;
pub use group::{BaseRule, ElementStream, Group, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

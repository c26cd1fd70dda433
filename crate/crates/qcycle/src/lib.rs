//! Exact-arithmetic library for the cycle indices of the finite classical groups.
//!
//! The crate computes conjugacy-class data and class sizes for `GL(n,q)`,
//! `Mat(n,q)` (conjugation orbits), `U(n,q)`, `Sp(2n,q)` and `O^±(n,q)` (odd
//! characteristic), builds the associated cycle-index generating functions over
//! exact rationals, and derives probabilistic statistics of a uniform random
//! element: semisimplicity, regularity, characteristic-polynomial counts,
//! number-of-irreducible-factor means, and average-order lower bounds.
//!
//! Every class-size and generating-function formula is cross-certified at
//! small sizes against a brute-force matrix oracle ([`oracle`]) that
//! enumerates the groups element by element.

pub mod budget;
pub mod classdata;
pub mod error;
pub mod field;
pub mod groups;
pub mod num_util;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod series;

pub use budget::Budget;
pub use classdata::{ClassDatum, SlotData, WittType};
pub use error::{Error, Result};
pub use field::Field;
pub use groups::{Family, GroupId, Sign};
pub use partition::{OSignedPartition, Partition, SpSignedPartition};
pub use poly::MonicPoly;
pub use series::TruncSeries;


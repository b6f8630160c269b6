//! Schur rings over finite abelian groups.
//!
//! A Schur ring (S-ring) over a finite group `G` is the subring of the group
//! ring `ZG` spanned by a partition of `G` that contains the identity as a
//! class, is closed under taking inverses classwise, and is closed under
//! multiplication of class sums. This crate provides:
//!
//! * exact arithmetic for finite abelian groups, their subgroups,
//!   automorphism groups, characters and cyclotomic integers ([`group`]);
//! * the S-ring data structure, axiom verification, the closure operator,
//!   cyclotomic / tensor / generalized wreath / dual constructions and
//!   Cayley-isomorphism canonical forms ([`sring`]);
//! * structure theory for S-rings over `E9` and `E9 x Cp`: regular
//!   partitions, standard pairs, subdirect products and the product/wreath
//!   classification ([`structure`]);
//! * a schurity decider based on backtracking with partition refinement over
//!   the Cayley configuration ([`schurity`]);
//! * complete enumeration up to Cayley isomorphism, a brute-force oracle for
//!   tiny groups and a seeded random sampler ([`enumeration`]);
//! * JSON catalog persistence ([`catalog`]) and seeded property suites
//!   ([`props`]).
//!
//! All values are immutable after construction and safe to share across
//! threads; operations are pure functions of their inputs.

pub mod catalog;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod props;
pub mod schurity;
pub mod sring;
pub mod structure;

pub use error::SchurError;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, SchurError>;

/// Version string recorded in catalog metadata.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

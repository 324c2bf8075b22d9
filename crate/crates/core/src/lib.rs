//! Finite combinatorics of hypergroupoids.
//!
//! The crate works with levelwise-finite simplicial sets stored up to a
//! truncation level, and decides the horn-filling conditions that define
//! Kan complexes and Duskin–Glenn n-hypergroupoids. Around that core sit
//! the classical correspondences that can be checked by enumeration:
//!
//! * groupoids and their nerves, with recovery of the fundamental groupoid
//!   from a 1-hypergroupoid ([`groupoid`]);
//! * local systems and Cartesian morphisms ([`groupoid::local_system`]);
//! * simplicial abelian groups, the Dold–Kan functors, Eilenberg–MacLane
//!   objects and homology via Smith normal form ([`abelian`]);
//! * Čech nerves and Čech cohomology of finite covers ([`cech`]).
//!
//! Everything here is `no_std` and only needs `alloc`; document formats
//! and the command-line frontend live in the `hgk` crate.
#![cfg_attr(not(test), no_std)]
#![warn(rust_2018_idioms)]

extern crate alloc;

pub mod abelian;
pub mod cech;
mod error;
pub mod groupoid;
pub mod matching;
pub mod simplex;
pub mod sset;

pub use error::{Error, Result};
pub use matching::{CheckReport, Failure, FailureKind, FiniteSets, Site};
pub use simplex::MonotoneMap;
pub use sset::{EnumLimit, SimplicialMorphism, SimplicialSet};

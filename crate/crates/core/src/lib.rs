//! Covering numbers of finite groups.
//!
//! The crate computes the normal cyclic covering number (the least number of
//! cyclic subgroups whose conjugates cover a group) and its abelian analogue for
//! finite groups given by permutations, multiplication tables or closed-form
//! constructions. It also builds the finite congruence quotients of the unit
//! group of the quaternion division algebra over `Q_p`, and the directed graph of
//! small `p`-groups linked by central quotients.
//!
//! Everything here is `no_std` with `alloc`; file formats, caching and the
//! command line live in the companion `ncc` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod group;
pub mod invariants;
pub mod limits;
pub mod padic;
pub mod pgroup;
pub mod setcover;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, Law, SubgroupHandle};
pub use limits::Limits;

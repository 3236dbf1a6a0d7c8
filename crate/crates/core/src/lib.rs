//! Cohomology rings of the fundamental groups of Sol sapphires `K(r, s, t, u)`.
//!
//! The crate builds the groups from their normal forms, an explicit length-3
//! free resolution of `Z` over `ZG`, a partial diagonal approximation and the
//! duality maps needed for cup products in bidegrees `(1, 1)`, `(1, 2)` and
//! `(2, 1)`, all in exact integer arithmetic.

pub mod coefficients;
pub mod diagonal;
pub mod fox;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod products;
pub mod resolution;
pub mod ring;
pub mod verify;

pub use group::{Character, Generator, Group, GroupElement, GroupError, GroupParams, Int};
pub use ring::{GroupRingElement, RingError};

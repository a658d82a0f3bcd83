//! Fixed points of the map `Psi_t = (Lambda_{-t} - 1) / (-t)` on class
//! functions of a finite group, where `Lambda_{-t}` is built from the Adams
//! operations `psi^k f (x) = f(x^k)`.
//!
//! The crate computes the group `A(G)` of nonzero class functions with
//! `f(x^k) = f(x)^k` (the formal fixed points of `Psi_t`) by solving a
//! congruence system, checks it against an exhaustive search and against
//! closed forms for symmetric, alternating and elementary abelian groups, and
//! studies `Lambda_{-t}(f)` as a multivalued function of a complex `t`.

pub mod analytic;
pub mod cli;
pub mod closedforms;
pub mod error;
pub mod fixpoints;
pub mod groups;
pub mod partitions;

pub use error::{Error, Result};

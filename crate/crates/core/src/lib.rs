//! Exact arithmetic for Stickelberger elements of monomial CM Galois groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals, elements of cyclotomic fields, Galois action,
//!   integrality and inverse-different membership.
//! * [`group`]: finite groups given by multiplication tables, with the
//!   structural queries needed downstream (classes, subgroups, quotients).
//! * [`character`]: exact characters, induction/restriction, monomial
//!   character tables and the built-in tables of the supported families.
//! * [`groupring`]: the group algebra and its centre: idempotents, the
//!   central conductor, monomial representations and reduced norms.
//! * [`stickelberger`]: Euler factors, `delta_T`, and assembly of
//!   `(S,T)`-modified Stickelberger elements from L-values or from abelian
//!   subextension data.
//! * [`annihilate`]: mock class modules and the reduction-identity checks.

pub mod annihilate;
pub mod character;
pub mod error;
pub mod exactnum;
pub mod group;
pub mod groupring;
pub mod stickelberger;

pub use error::{Error, Result};

//! Exact verification and bounded search for Diophantine equations built from
//! products of disjoint blocks of consecutive integers.
//!
//! The crate is organised around four layers:
//!
//! * [`mpoly`]: exact sparse multivariate polynomials over `BigInt`, the
//!   substrate for every symbolic identity checked here.
//! * [`pellfam`]: a data-driven Pell recurrence engine. Each solution family
//!   is a descriptor (ring, coefficients, base pair, unit pair, output
//!   transform); one engine steps them all.
//! * [`identities`]: explicit, non-recursive polynomial solution families and
//!   their symbolic verification.
//! * [`runge`]: Fujiwara's root bound and the search bounds it yields for the
//!   two sextic-product equations, plus the auxiliary cubic identities behind
//!   them.
//! * [`search`]: bounded exhaustive integer searches (square, oblong, cube
//!   and triple-product targets) with conservative modular pre-filters.
//!
//! The crate is `no_std` (with `alloc`); everything here is pure computation.
//! IO, command-line handling and parallel drivers live in the companion
//! `blockprod-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod identities;
pub mod mpoly;
pub mod pellfam;
pub mod runge;
pub mod search;

pub use mpoly::{MPoly, MPolyError, Monomial};
pub use pellfam::{verify_equation, Assignment, EquationId, PellFamily, PellPair};
pub use search::SolutionRecord;

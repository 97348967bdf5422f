//! Decision-theoretic causal inference checks over discrete multi-regime models.
//!
//! A [`MultiRegimeModel`] holds one joint distribution per assignment of the
//! intervention indicators (each either idle or set to a value of its target).
//! On top of that the crate evaluates extended conditional independence
//! statements ([`eci`]), checks distributional consistency and the lemma suite
//! built on it ([`consistency`]), reasons on augmented DAGs ([`dag`]), verifies
//! two-stage g-computation ([`gcomp`]) and hosts counterexample searches and
//! illustrative constructions ([`lab`]).
//!
//! Everything is exact enumeration over small finite tables. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod consistency;
pub mod dag;
pub mod eci;
mod error;
pub mod gcomp;
pub mod lab;
pub mod model;
pub mod random;
pub mod rng;
pub mod structural;
mod table;
mod varset;
mod verdict;

pub use error::{Error, Result};
pub use model::{IndicatorState, MultiRegimeModel, Regime, RegimeAssignment, VariableDecl};
pub use table::DistributionTable;
pub use varset::VarSet;
pub use verdict::{Context, Outcome, Verdict, Witness};

/// Default tolerance for numerical equality checks (total-variation distance).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Conditioning events with probability at or below this are treated as null.
pub const NULL_EVENT: f64 = 1e-14;

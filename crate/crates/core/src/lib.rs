//! Exact computations around Schur multipliers and projective representations.
//!
//! The crate covers four layers:
//!
//! * [`groups`]: element models for finitely generated abelian groups, the
//!   metacyclic groups `G(m, n, r)`, generalized discrete Heisenberg groups,
//!   and finite groups given by multiplication tables.
//! * [`homology`]: integer Smith normal forms, the bar complex and integral
//!   `H_2(G, Z)` together with the splitting data that turns homology classes
//!   into explicit 2-cocycles.
//! * [`cocycles`] and [`repgroup`]: 2-cocycles valued in roots of unity,
//!   coboundary decisions, transgression/inflation, and representation groups.
//! * [`projrep`] and [`alphafinite`]: projective representations (induction,
//!   lifting to a representation group, decomposition) and finiteness criteria
//!   for irreducible projective representations.
//!
//! Everything that the theory states as an identity is checked with exact
//! integer or root-of-unity arithmetic; floating point only appears in the
//! numerical decomposition engine of [`projrep::decompose`].

pub mod alphafinite;
pub mod arith;
pub mod cocycles;
pub mod corpus;
pub mod error;
pub mod groups;
pub mod homology;
pub mod projrep;
pub mod repgroup;
pub mod report;

pub use error::{Error, Result};

pub use arith::RootExp;
pub use cocycles::{Cochain1, Cocycle, CentralExtension, Character};
pub use groups::{
    FinAbDesc, FiniteGroupTable, Group, HeisenbergDesc, HeisenbergElement, MetacyclicDesc,
    MetacyclicElement, Presentation, SampleGroup,
};
pub use homology::{IntMatrix, SnfResult, XiData};
pub use projrep::{DenseRep, MonomialMatrix, MonomialRep, ProjRep};
pub use repgroup::{MetacoverDesc, RepGroup};
pub use report::CheckResult;

/// Seed used by every randomized procedure unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 20240417;

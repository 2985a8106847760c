//! Exact element models for the group families used throughout the crate.
//!
//! Every family implements [`Group`]; infinite families also implement
//! [`SampleGroup`] so that identities can be checked on random elements.

mod finab;
mod heisenberg;
mod metacyclic;
mod presentation;
mod table;

pub use finab::{FinAbDesc, FinAbElement};
pub use heisenberg::{heis_mul, HeisenbergDesc, HeisenbergElement};
pub use metacyclic::{mc_commutator_power, mc_mul, MetacyclicDesc, MetacyclicElement};
pub use presentation::Presentation;
pub use table::{FiniteGroupTable, RightCosets, TableJson};

use crate::Result;
use rand::Rng;
use std::fmt::Debug;

/// A group given by an exact element model.
pub trait Group {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    /// `x y x^{-1} y^{-1}`.
    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let xy = self.mul(x, y);
        let xi = self.inv(x);
        let yi = self.inv(y);
        self.mul(&self.mul(&xy, &xi), &yi)
    }

    fn pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

/// Groups that can draw random elements, with infinite coordinates bounded by `bound`.
pub trait SampleGroup: Group {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;
}

/// Anything that can be turned into a multiplication table.
pub trait ToTable {
    fn finite_table(&self) -> Result<FiniteGroupTable>;
}

/// Builds the multiplication table of a finite group description.
pub fn finite_table_of<D: ToTable>(desc: &D) -> Result<FiniteGroupTable> {
    desc.finite_table()
}

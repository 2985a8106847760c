//! Benchmark fixtures shared by the criterion targets.

use schurcover_core::groups::finite_table_of;
use schurcover_core::{FinAbDesc, FiniteGroupTable, MetacyclicDesc};

/// Dihedral group of order `2k`.
pub fn dihedral(k: u64) -> FiniteGroupTable {
    finite_table_of(&MetacyclicDesc::new(k, 2, k - 1).unwrap()).unwrap()
}

pub fn abelian(factors: &[u64]) -> FiniteGroupTable {
    finite_table_of(&FinAbDesc::new(factors)).unwrap()
}

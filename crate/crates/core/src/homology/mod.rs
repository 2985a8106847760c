//! Integer linear algebra and the bar complex: Smith normal forms, `H_2(G, Z)` and the
//! explicit cocycle data `t_i` extracted from a splitting of the complex.

mod bar;
mod matrix;
mod multiplier;
mod snf;
mod xi;

pub use bar::{
    bar_boundary, bar_boundary_capped, check_boundary_composition, h2_integral,
    h2_integral_capped, h2_two_pass, pair_index, DEFAULT_BAR_CAP,
};
pub use matrix::{IntMatrix, MatrixJson, SparseMatrix};
pub use multiplier::{multiplier_finab, multiplier_metacyclic};
pub use snf::{cokernel, cokernel_factors_dense, snf, snf_diagonal, verify_snf, Cokernel, RowEchelon, SnfResult};
pub use xi::{xi_extract, xi_extract_capped, TTable, TTableJson, XiData, XiJson};

#[allow(unused_imports)]
pub(crate) use bar::check_cap;

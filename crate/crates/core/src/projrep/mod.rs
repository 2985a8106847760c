//! Projective representations of finite groups: exact monomial models, induction, lifting
//! to a representation group and back, the monomial correspondence, weight spaces and a
//! numerical decomposition into irreducibles.

mod decompose;
mod lift;
mod monomial;
mod rep;

pub use decompose::{count_irr_alpha, count_irr_central, decompose, Decomposition, CLUSTER_TOL};
pub use lift::{descend, finite_weight_space, lift, monomial_correspondence, Correspondence};
pub use monomial::MonomialMatrix;
pub use rep::{
    alpha_characters, check_projrep, induce, twisted_regular, DenseRep, MonomialRep, ProjCharacter,
    ProjCheck, ProjRep, DENSE_TOL,
};

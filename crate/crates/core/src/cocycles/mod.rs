//! 2-cocycles with values in roots of unity: coboundary decisions, central extensions,
//! transgression and closed-form cocycles on infinite groups.

mod bruteforce;
mod closed;
mod extension;
mod finite;

pub use bruteforce::{h2_bruteforce, h2_cochain_solve, BRUTEFORCE_CAP};
pub use closed::{
    abelian_class_order, closed_coboundary, example1_cocycle, metacyclic_bezout, metacyclic_cocycle,
    ClosedCochain, ClosedCocycle,
};
pub use extension::{characters_of, inflation, transgression, CentralExtension, Character};
pub use finite::{
    class_order, coboundary, cohomologous, is_coboundary, restriction, xi_cocycle, Cochain1,
    Cocycle,
};

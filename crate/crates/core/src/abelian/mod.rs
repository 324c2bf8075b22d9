//! Abelian groups, chain complexes, simplicial abelian groups and the
//! Dold–Kan correspondence, all computed through integer Smith forms.

mod chain;
mod group;
mod matrix;
mod simplicial;

pub use chain::{ChainComplex, Orientation};
pub use group::{AbHom, CyclicSum, FGAbelianGroup, Subquotient};
pub use matrix::{Matrix, Smith};
pub use simplicial::{
    denormalize, dold_kan_counit, dold_kan_unit, em_space, Normalization, SimplicialAbelianGroup,
};

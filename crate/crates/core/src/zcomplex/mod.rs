//! Exact homological algebra over the integers.

pub mod abelian;
pub mod complex;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod random;
pub mod smith;

pub use abelian::{pdim_fg_abelian, FgAbelianGroup};
pub use complex::{
    cone, moore_ghost, sample_chain_map, ChainMap, ChainMapLattice, Cone, CyclicComplex,
    GradedComplex, Homology, Homotopy, InducedMap,
};
pub use lattice::{solve_diophantine, DiophantineSolution, Lattice, Subquotient};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};

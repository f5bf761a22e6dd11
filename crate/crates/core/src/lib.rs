//! Ghost-length bounds for real projective spaces, and the ghost projective
//! class for bounded complexes of finitely generated free abelian groups.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod purity;
pub mod report;
pub mod resolution;
pub mod steenrod;
pub mod zcomplex;

pub use error::{Error, Result};

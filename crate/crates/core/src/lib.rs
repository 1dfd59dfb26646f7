//! Artinian monomial algebras built from graphs and simplicial complexes,
//! exact weak/strong Lefschetz tests, simplicial Perazzo forms and the
//! roller-coaster sequence machinery.

pub mod complexes;
pub mod error;
pub mod graphs;
pub mod lefschetz;
pub mod linalg;
pub mod perazzo;
pub mod rollercoaster;
pub mod vertex_set;

pub use complexes::{parse_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use graphs::{Graph, IndependenceSequence};
pub use lefschetz::{GradedMonomialAlgebra, LefschetzReport};
pub use linalg::{Field, IntegerMatrix, RankResult};
pub use vertex_set::VertexSet;

//! Representation theory of simple Lie algebras: roots, weights, irreducible
//! representations, tensor products and branching rules.

pub mod algebra_core;
pub mod branching;
pub mod cli_io;
pub mod error;
pub mod irrep_props;
pub mod memo;
pub mod rational;
pub mod roots;
pub mod tensor;
pub mod weights;
pub mod weyl;

pub use algebra_core::{
    convert_basis, defining_data, parse_algebra, parse_simple_algebra, scalar_product, AlgebraId, Basis, Class,
    DefiningData, Kind, Label, ProductAlgebra, Vector,
};
pub use error::{Error, Result};

//! Exact rational simplicial geometry for Z-maps and Z-retracts of
//! rational polyhedra.

pub mod cell;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod exactnum;
pub mod regular;
pub mod scx;
pub mod subdivide;
pub mod zmap;
mod affine;
mod linalg;

pub use complex::{AbsComplex, GeoComplex, GeoSimplex, RPoint, WeightedComplex};
pub use error::{Error, PropertyLabel, Result};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;
pub type IntMat = exactnum::Matrix<Int>;

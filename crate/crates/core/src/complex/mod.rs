//! Geometric and abstract simplicial complexes over rational points.

mod abs;
mod geo;
mod point;
mod simplex;

pub use abs::{AbsComplex, WeightedComplex};
pub use geo::GeoComplex;
pub use point::RPoint;
pub use simplex::GeoSimplex;
pub(crate) use simplex::affine_dim;

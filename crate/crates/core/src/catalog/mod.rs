//! Ready-made systems, symmetries and laws, plus 3-vector sugar.

mod entries;
mod scalar;
mod vector;
mod vorticity;

pub use entries::{catalog_entry, CatalogEntry, CATALOG_NAMES};
pub use scalar::*;
pub use vector::{grad, laplacian, levi_civita, VectorExpr};
pub use vorticity::*;

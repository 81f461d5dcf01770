//! Dense complex linear algebra kernel.

pub mod factor;
pub mod matrix;
pub mod subspace;
pub mod vector;

pub use factor::{factor_product, Factorization};
pub use matrix::ComplexMatrix;
pub use subspace::{orthonormalize, Subspace};
pub use vector::StateVector;

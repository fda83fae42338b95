//! Exact linear algebra over `Q` and `F_p`: scalars, dense matrices, canonical
//! subspaces, linear systems and polynomials.

pub mod algebra;
pub mod field;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod subspace;
pub mod system;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
pub use subspace::Subspace;
pub use system::{LinearSystem, MatrixUnknown};
pub use algebra::MatrixAlgebra;

//! Finite-dimensional computations for string algebras: exact linear algebra,
//! presentations and words, linear relations with their sharp/flat calculus,
//! Kronecker modules, string and band modules, refined functors and the
//! descending-chain test for Σ-pure-injectivity of string modules.

pub mod error;
pub mod exactla;
pub mod filtration;
pub mod kronecker;
pub mod presentation;
pub mod relation;
pub mod sigma;
pub mod strmod;
pub mod words;

pub use error::{Error, Result};
pub use exactla::{Field, LinearSystem, Matrix, Poly, Scalar, Subspace, Vector};
pub use presentation::{Letter, SignTable, StringPresentation};
pub use words::{parse_word, parse_word_unchecked, Word};
pub use relation::{LinearRelation, SharpFlatData, TModule};
pub use kronecker::{parse_kronecker, Block, HomSpace, KroneckerDecomposition, KroneckerModule};
pub use strmod::{band_module, parse_representation, string_module, Representation};
pub use filtration::{combine_f, combine_g, filtration, g_functor, refined_functor, word_relation, Filtration, FunctorValue};
pub use sigma::{is_finite_dimensional, is_sigma_pure_injective, side_word_families, ChainCertificate, Family};

//! Exact hyperoctahedral homology of finite-dimensional involutive algebras.

pub mod barfun;
pub mod chain;
pub mod complexes;
pub mod croscat;
pub mod error;
pub mod homology;
pub mod invalg;
pub mod matrix;
pub mod pipeline;
pub mod ring;
pub mod scalar;
pub mod slominska;

pub use error::{Error, Result};
pub use matrix::{SparseMatrix, SparseVec};
pub use ring::Ring;
pub use scalar::Rat;
pub use invalg::InvolutiveAlgebra;
pub use chain::{ChainMap, TruncatedComplex};
pub use homology::HomologyResult;

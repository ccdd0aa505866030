//! Exact computations for universal sl(n) Frobenius extensions: dual bases
//! and genus-reduction terms, root specializations, symmetric functions,
//! the genus-reduction matrix, and normal forms in the rank-2 skein module
//! of `S^2 x S^1`.

pub mod error;
pub mod frobenius;
pub mod gmatrix;
pub mod linalg;
pub mod polyring;
pub mod ratfunc;
pub mod skein2;
pub mod symfun;

pub use error::{Error, Result};
pub use frobenius::{AElement, DualBasis, FrobSystem};
pub use gmatrix::{GMatrix, SymGMatrix};
pub use polyring::{Monomial, MultiPoly, Rational, VarTable};
pub use skein2::{NormalForm, SkeinElement, SphereConfig};
pub use symfun::{ElemPoly, Partition, SymPoly};

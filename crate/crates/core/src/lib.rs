//! Two-parameter quantum `gl_n`, its q-Schur and Hecke algebras, and their
//! commuting actions on tensor space, checked against a finite-field oracle.
pub mod error;
pub mod flag_oracle;
pub mod galois;
pub mod hecke;
pub mod jparity;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod schur;
pub mod stab;
pub mod tensor;
pub mod uvt;
pub mod words;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly2, Poly, RSPoly, RatPoly};
pub use matrix::IntMatrix;

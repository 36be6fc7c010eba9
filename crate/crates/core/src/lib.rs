//! Bicomplex numbers, matrices and the finite-dimensional bicomplex Hilbert
//! module, with a spectral theorem for self-adjoint operators and unitary
//! time evolution.
//!
//! A bicomplex number `w = z1 + z2 i2` with `z1, z2 ∈ C(i1)` is stored as the
//! pair `(z1, z2)`. Most heavy lifting happens in the idempotent basis
//! `w = ẑ1 e1 + ẑ2 e2`, where arithmetic and linear algebra split into two
//! independent complex problems.

pub mod bct;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod matrix;
pub mod operators;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod text;

pub use error::{Error, Result, SingularComponent};
pub use hilbert::{BasisLabel, Ket, KetClass, ScalarProductSpec};
pub use linalg::CMatrix;
pub use matrix::BicomplexMatrix;
pub use operators::{EigenPair, EvolutionConfig, Operator};
pub use scalar::{Bicomplex, Classification, Complex, Hyperbolic, Tolerance};

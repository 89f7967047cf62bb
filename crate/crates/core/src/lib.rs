//! Exact construction and verification of invariant hypercomplex structures
//! on compact homogeneous spaces, at the level of Lie algebras.
//!
//! The pipeline is: build a [`roots::RootSystem`], realize its Chevalley basis
//! ([`chevalley::Algebra`]), select a strongly orthogonal root sequence and
//! decompose the algebra ([`joyce`]), assemble the triple `(I, J, K)` on the
//! tangent space, and check every integrability and compatibility identity
//! ([`verify`]).
//!
//! All algebra is generic over [`scalar::Scalar`]; the aliases below fix the
//! two shipped backends.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod joyce;
pub mod linalg;
pub mod roots;
pub mod verify;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Approx, Scalar, Surd};

/// Exact backend: Gaussian rationals with adjoined square roots.
pub type ExactScalar = Surd;
/// Double-precision complex backend.
pub type FloatScalar = Approx<f64>;


pub type ExactTriple = joyce::HypercomplexTriple<ExactScalar>;
pub type FloatTriple = joyce::HypercomplexTriple<FloatScalar>;
pub type ExactDecomposition = joyce::JoyceDecomposition<ExactScalar>;
pub type FloatDecomposition = joyce::JoyceDecomposition<FloatScalar>;

//! Calculus over finite-dimensional real associative unital algebras.
//!
//! The structural layer ([`algebra`], [`isomorph`], [`eqgen`]) is generic over
//! the scalar type; the analytic layer works in `f64`. The aliases below pick
//! the common instantiations.

pub mod algebra;
pub mod calculus;
pub mod diffquot;
pub mod eqgen;
pub mod expr;
pub mod integrate;
pub mod isomorph;
pub mod linalg;
pub mod scalar;

pub use num_rational::Rational64;
pub use scalar::{Real, Scalar};

pub type Algebra = algebra::Algebra<f64>;
pub type Element = algebra::Element<f64>;
pub type Algebra32 = algebra::Algebra<f32>;
pub type Element32 = algebra::Element<f32>;
pub type ExactAlgebra = algebra::Algebra<Rational64>;
pub type ExactElement = algebra::Element<Rational64>;

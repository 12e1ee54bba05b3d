//! Divisors of rational functions, exactly and from boundary behavior.
//!
//! A nonzero meromorphic `f` is rational with divisor `d = deg P − deg Q`
//! exactly when `z·f'(z)/f(z) → d` as `z → ∞`. This crate provides:
//!
//! - [`gaussian`], [`poly`] and [`rational`]: exact Gaussian-rational
//!   polynomials, GCD,
//!   coprime reduction, divisor and symbolic log-derivative;
//! - [`expr`]: a parser for expressions in `z` built from arithmetic and
//!   `exp`, with forward-mode `(f, f')` evaluation;
//! - [`contour`]: trapezoidal argument-principle integrals on circles;
//! - [`estimate`]: radius probes of `z·f'/f`, the rational/not-rational
//!   classifier, the `z·g'(z)` residual and a root-counting check for
//!   polynomials.

pub mod contour;
pub mod corpus;
pub mod error;
pub mod estimate;
pub mod expr;
pub mod factored;
pub mod gaussian;
pub mod poly;
pub mod rational;

pub use error::{ContourError, ConversionError, EstimateError, EvalError, ExactError, ParseError};
pub use gaussian::GaussianRational;
pub use poly::Polynomial;
pub use rational::{LogDerivative, RationalFunctionExact};

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::gaussian::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("numerator is the zero polynomial")]
    ZeroNumerator,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("evaluation at a pole: {0}")]
    Pole(Box<GaussianRational>),
}

/// Token classes a parser position would have accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expected {
    Number,
    Integer,
    Z,
    I,
    Exp,
    LParen,
    RParen,
    Minus,
    Operator,
    End,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Number => "number",
            Expected::Integer => "integer exponent",
            Expected::Z => "'z'",
            Expected::I => "'i'",
            Expected::Exp => "'exp'",
            Expected::LParen => "'('",
            Expected::RParen => "')'",
            Expected::Minus => "'-'",
            Expected::Operator => "operator",
            Expected::End => "end of input",
        })
    }
}

fn join_expected(items: &[Expected]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// `offset` is the 0-based byte offset of the offending token.
    #[error("syntax error at byte {offset}: found {found}, expected one of {}", join_expected(.expected))]
    Syntax { offset: usize, found: String, expected: Vec<Expected> },
    #[error("integer exponent out of range at byte {offset}")]
    ExponentOverflow { offset: usize },
    #[error("numeric literal out of range at byte {offset}")]
    LiteralOutOfRange { offset: usize },
    #[error("expression nested too deeply at byte {offset}")]
    TooDeep { offset: usize },
    #[error("division by the literal zero at byte {offset}")]
    ZeroDivisor { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ExponentOverflow { offset }
            | ParseError::LiteralOutOfRange { offset }
            | ParseError::TooDeep { offset }
            | ParseError::ZeroDivisor { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("evaluation at a pole near z = {z}")]
    Pole { z: Complex64 },
    #[error("non-finite intermediate value at z = {z}")]
    NonFinite { z: Complex64 },
}

impl EvalError {
    pub fn point(&self) -> Complex64 {
        match self {
            EvalError::Pole { z } | EvalError::NonFinite { z } => *z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("literal `{0}` cannot be represented exactly")]
    InexactLiteral(String),
    #[error("expression is identically zero")]
    ZeroFunction,
    #[error("division by an identically zero subexpression")]
    DivisionByZero,
    #[error("degree {0} exceeds the exact-arithmetic limit")]
    DegreeTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContourError {
    #[error("invalid contour parameters: {0}")]
    InvalidSpec(String),
    #[error(
        "singularity near the contour at radius {radius} after {attempts} perturbations (last failure at z = {z})"
    )]
    Singularity { radius: f64, attempts: u32, z: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("contour failure at radius {radius}: {source}")]
    Contour {
        radius: f64,
        #[source]
        source: ContourError,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

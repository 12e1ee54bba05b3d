//! Textual meromorphic expressions: parsing, canonical printing, jet
//! evaluation and the exact bridge.

mod ast;
mod exact;
mod jet;
mod parser;

pub use ast::{Expression, Literal};
pub use exact::{as_exact_rational, decimal_to_rational, expression_from_rational, ExactForm, MAX_EXACT_DEGREE};
pub use jet::{Jet, JetEval};
pub use parser::parse;

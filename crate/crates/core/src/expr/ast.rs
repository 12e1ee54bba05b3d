use std::fmt;

use num_complex::Complex64;

/// A numeric atom. Decimal literals keep their source text so the exact
/// bridge can convert them without going through a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Literal {
    Decimal { text: String, value: f64 },
    ImaginaryUnit,
}

impl Literal {
    pub fn decimal(text: impl Into<String>) -> Option<Self> {
        let text = text.into();
        let value: f64 = text.parse().ok()?;
        value.is_finite().then_some(Literal::Decimal { text, value })
    }

    pub fn value(&self) -> Complex64 {
        match self {
            Literal::Decimal { value, .. } => Complex64::new(*value, 0.0),
            Literal::ImaginaryUnit => Complex64::new(0.0, 1.0),
        }
    }
}

/// Parsed expression in the variable `z`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Variable,
    Constant(Literal),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    IntPow(Box<Expression>, i32),
    Exp(Box<Expression>),
}

#[allow(clippy::should_implement_trait)]
impl Expression {
    /// Integer or decimal constant from its literal text. Panics on text that
    /// is not a finite decimal number.
    pub fn number(text: &str) -> Self {
        Expression::Constant(Literal::decimal(text).expect("finite decimal literal"))
    }

    pub fn add(a: Self, b: Self) -> Self {
        Expression::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Self, b: Self) -> Self {
        Expression::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Self, b: Self) -> Self {
        Expression::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Self, b: Self) -> Self {
        Expression::Div(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Self) -> Self {
        Expression::Neg(Box::new(a))
    }

    pub fn pow(a: Self, k: i32) -> Self {
        Expression::IntPow(Box::new(a), k)
    }

    pub fn exp(a: Self) -> Self {
        Expression::Exp(Box::new(a))
    }

    pub fn contains_exp(&self) -> bool {
        match self {
            Expression::Variable | Expression::Constant(_) => false,
            Expression::Exp(_) => true,
            Expression::Neg(a) | Expression::IntPow(a, _) => a.contains_exp(),
            Expression::Add(a, b) | Expression::Sub(a, b) | Expression::Mul(a, b) | Expression::Div(a, b) => {
                a.contains_exp() || b.contains_exp()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expression::Variable | Expression::Constant(_) => 1,
            Expression::Neg(a) | Expression::IntPow(a, _) | Expression::Exp(a) => 1 + a.depth(),
            Expression::Add(a, b) | Expression::Sub(a, b) | Expression::Mul(a, b) | Expression::Div(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Fully parenthesized text; parsing it yields a structurally equal tree.
    pub fn print_canonical(&self) -> String {
        let mut out = String::new();
        self.write_canonical(&mut out);
        out
    }

    fn write_canonical(&self, out: &mut String) {
        let binary = |out: &mut String, a: &Expression, op: &str, b: &Expression| {
            out.push('(');
            a.write_canonical(out);
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            b.write_canonical(out);
            out.push(')');
        };
        match self {
            Expression::Variable => out.push('z'),
            Expression::Constant(Literal::ImaginaryUnit) => out.push('i'),
            Expression::Constant(Literal::Decimal { text, .. }) => out.push_str(text),
            Expression::Add(a, b) => binary(out, a, "+", b),
            Expression::Sub(a, b) => binary(out, a, "-", b),
            Expression::Mul(a, b) => binary(out, a, "*", b),
            Expression::Div(a, b) => binary(out, a, "/", b),
            Expression::Neg(a) => {
                out.push_str("(-");
                a.write_canonical(out);
                out.push(')');
            }
            Expression::IntPow(a, k) => {
                out.push('(');
                a.write_canonical(out);
                out.push_str(" ^ ");
                out.push_str(&k.to_string());
                out.push(')');
            }
            Expression::Exp(a) => {
                out.push_str("exp(");
                a.write_canonical(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print_canonical())
    }
}

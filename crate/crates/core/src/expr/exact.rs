//! Bridge from parsed expressions to exact rational functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::ConversionError;
use crate::expr::ast::{Expression, Literal};
use crate::gaussian::GaussianRational;
use crate::poly::Polynomial;
use crate::rational::RationalFunctionExact;

/// Largest degree the bridge will expand to.
pub const MAX_EXACT_DEGREE: u64 = 4096;

/// Largest decimal exponent accepted in an exactly converted literal.
const MAX_LITERAL_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactForm {
    Rational(RationalFunctionExact),
    /// The expression contains `exp` and is left to the numerical pipeline.
    NotRationalForm,
}

impl ExactForm {
    pub fn rational(&self) -> Option<&RationalFunctionExact> {
        match self {
            ExactForm::Rational(f) => Some(f),
            ExactForm::NotRationalForm => None,
        }
    }
}

/// Exact coprime form of an `exp`-free expression.
pub fn as_exact_rational(e: &Expression) -> Result<ExactForm, ConversionError> {
    if e.contains_exp() {
        return Ok(ExactForm::NotRationalForm);
    }
    let frac = to_frac(e)?;
    if frac.num.is_zero() {
        return Err(ConversionError::ZeroFunction);
    }
    let f = RationalFunctionExact::reduce(&frac.num, &frac.den).expect("nonzero parts");
    Ok(ExactForm::Rational(f))
}

/// Exact value of a decimal literal such as `12.5e-3`.
pub fn decimal_to_rational(text: &str) -> Result<BigRational, ConversionError> {
    let inexact = || ConversionError::InexactLiteral(text.to_string());
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i64>().map_err(|_| inexact())?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(inexact());
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.abs() > MAX_LITERAL_EXPONENT {
        return Err(inexact());
    }
    let n: BigInt = digits.parse().map_err(|_| inexact())?;
    let ten_pow = BigInt::from(10u32).pow(scale.unsigned_abs() as u32);
    Ok(if scale >= 0 { BigRational::from_integer(n * ten_pow) } else { BigRational::new(n, ten_pow) })
}

/// Converts an exact rational function back into an expression tree whose
/// constants are exact (`p/q` literals), suitable for jet evaluation.
pub fn expression_from_rational(f: &RationalFunctionExact) -> Expression {
    crate::expr::parse(&f.to_expr_text()).expect("generated text parses")
}

struct Frac {
    num: Polynomial,
    den: Polynomial,
}

impl Frac {
    fn poly(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::poly(Polynomial::zero());
        }
        let g = num.gcd(&den).expect("denominator nonzero");
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let inv = den.leading().and_then(GaussianRational::inv).expect("nonzero");
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn degree(&self) -> u64 {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0)) as u64
    }
}

fn to_frac(e: &Expression) -> Result<Frac, ConversionError> {
    Ok(match e {
        Expression::Variable => Frac::poly(Polynomial::z()),
        Expression::Constant(Literal::ImaginaryUnit) => Frac::poly(Polynomial::constant(GaussianRational::i())),
        Expression::Constant(Literal::Decimal { text, .. }) => {
            Frac::poly(Polynomial::constant(decimal_to_rational(text)?.into()))
        }
        Expression::Add(a, b) | Expression::Sub(a, b) => {
            let (a, b) = (to_frac(a)?, to_frac(b)?);
            let lhs = a.num.mul(&b.den);
            let rhs = b.num.mul(&a.den);
            let num = if matches!(e, Expression::Add(..)) { lhs.add(&rhs) } else { lhs.sub(&rhs) };
            Frac::normalized(num, a.den.mul(&b.den))
        }
        Expression::Mul(a, b) => {
            let (a, b) = (to_frac(a)?, to_frac(b)?);
            Frac::normalized(a.num.mul(&b.num), a.den.mul(&b.den))
        }
        Expression::Div(a, b) => {
            let (a, b) = (to_frac(a)?, to_frac(b)?);
            if b.num.is_zero() {
                return Err(ConversionError::DivisionByZero);
            }
            Frac::normalized(a.num.mul(&b.den), a.den.mul(&b.num))
        }
        Expression::Neg(a) => {
            let a = to_frac(a)?;
            Frac { num: a.num.neg(), den: a.den }
        }
        Expression::IntPow(a, k) => {
            let a = to_frac(a)?;
            let power = k.unsigned_abs();
            let degree = a.degree().saturating_mul(u64::from(power));
            if degree > MAX_EXACT_DEGREE {
                return Err(ConversionError::DegreeTooLarge(degree));
            }
            if *k < 0 && a.num.is_zero() {
                return Err(ConversionError::DivisionByZero);
            }
            if power == 0 {
                return Ok(Frac::poly(Polynomial::one()));
            }
            let (n, d) = (a.num.pow(power), a.den.pow(power));
            if *k < 0 {
                Frac::normalized(d, n)
            } else {
                Frac { num: n, den: d }
            }
        }
        Expression::Exp(_) => unreachable!("checked by contains_exp"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::poly::ratio;
    use num_traits::Zero;

    fn exact(text: &str) -> RationalFunctionExact {
        match as_exact_rational(&parse(text).unwrap()).unwrap() {
            ExactForm::Rational(f) => f,
            ExactForm::NotRationalForm => panic!("expected rational form for {text}"),
        }
    }

    #[test]
    fn cancellation() {
        let f = exact("(z^2-1)/(z-1)");
        assert_eq!(f.numer(), &Polynomial::from_integers(&[1, 1]));
        assert_eq!(f.denom(), &Polynomial::one());
        assert_eq!(f.divisor(), 1);
    }

    #[test]
    fn exp_gives_marker() {
        assert_eq!(as_exact_rational(&parse("exp(z)*z").unwrap()).unwrap(), ExactForm::NotRationalForm);
    }

    #[test]
    fn rational_constant() {
        let f = exact("z/3");
        let third = GaussianRational::real(ratio(1, 3));
        assert_eq!(f.numer(), &Polynomial::new(vec![GaussianRational::zero(), third]));
        assert_eq!(f.divisor(), 1);
    }

    #[test]
    fn negative_power_desugars_to_reciprocal() {
        let f = exact("z^-2");
        assert_eq!(f.divisor(), -2);
        assert_eq!(f.numer(), &Polynomial::one());
        assert_eq!(exact("(z+1)^-1*(z+1)^2").divisor(), 1);
    }

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(decimal_to_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(decimal_to_rational("2.5e-3").unwrap(), ratio(1, 400));
        assert_eq!(decimal_to_rational("3E2").unwrap(), ratio(300, 1));
        assert_eq!(decimal_to_rational(".5").unwrap(), ratio(1, 2));
        assert!(matches!(decimal_to_rational("1e-99999"), Err(ConversionError::InexactLiteral(_))));
        assert!(matches!(
            as_exact_rational(&parse("z + 1e-99999").unwrap()),
            Err(ConversionError::InexactLiteral(t)) if t == "1e-99999"
        ));
    }

    #[test]
    fn degenerate_forms() {
        assert_eq!(as_exact_rational(&parse("z - z").unwrap()), Err(ConversionError::ZeroFunction));
        assert_eq!(as_exact_rational(&parse("1/(z-z)").unwrap()), Err(ConversionError::DivisionByZero));
        assert!(matches!(as_exact_rational(&parse("z^100000").unwrap()), Err(ConversionError::DegreeTooLarge(100000))));
    }

    #[test]
    fn imaginary_unit_and_text_round_trip() {
        let f = exact("(z - i)*(z + i) / (2*z - 4)");
        assert_eq!(f.divisor(), 1);
        assert!(f.denom().is_monic());
        assert_eq!(exact(&f.to_expr_text()), f);
        let g = expression_from_rational(&f);
        assert_eq!(as_exact_rational(&g).unwrap(), ExactForm::Rational(f));
    }
}

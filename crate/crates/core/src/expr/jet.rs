//! Forward-mode evaluation of `(f(z), f'(z))`.

use num_complex::Complex64;

use crate::error::EvalError;
use crate::expr::ast::Expression;

/// Value and first derivative at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub deriv: Complex64,
}

impl Jet {
    pub fn new(value: Complex64, deriv: Complex64) -> Self {
        Self { value, deriv }
    }

    pub fn constant(value: Complex64) -> Self {
        Self { value, deriv: Complex64::new(0.0, 0.0) }
    }

    pub fn variable(z: Complex64) -> Self {
        Self { value: z, deriv: Complex64::new(1.0, 0.0) }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.deriv.is_finite()
    }

    /// `f'/f`; `None` when `f = 0` or the ratio is not finite.
    pub fn log_derivative(&self) -> Option<Complex64> {
        if self.value == Complex64::new(0.0, 0.0) {
            return None;
        }
        let r = self.deriv / self.value;
        r.is_finite().then_some(r)
    }
}

/// Anything that can produce `(f(z), f'(z))`. Implemented for parsed
/// expressions and for closures, so tests can plug in hand-written jets.
pub trait JetEval: Sync {
    fn eval_jet(&self, z: Complex64) -> Result<Jet, EvalError>;
}

impl JetEval for Expression {
    fn eval_jet(&self, z: Complex64) -> Result<Jet, EvalError> {
        eval(self, z)
    }
}

impl<F> JetEval for F
where
    F: Fn(Complex64) -> Result<Jet, EvalError> + Sync,
{
    fn eval_jet(&self, z: Complex64) -> Result<Jet, EvalError> {
        self(z)
    }
}

/// `u^k` for any `i64` exponent by repeated squaring; `None` for `0^k`, `k < 0`.
fn powi(u: Complex64, k: i64) -> Option<Complex64> {
    let mut e = k.unsigned_abs();
    let mut base = u;
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    if k < 0 {
        if u == Complex64::new(0.0, 0.0) {
            return None;
        }
        Some(acc.inv())
    } else {
        Some(acc)
    }
}

fn eval(e: &Expression, z: Complex64) -> Result<Jet, EvalError> {
    let zero = Complex64::new(0.0, 0.0);
    let jet = match e {
        Expression::Variable => Jet::variable(z),
        Expression::Constant(lit) => Jet::constant(lit.value()),
        Expression::Add(a, b) => {
            let (a, b) = (eval(a, z)?, eval(b, z)?);
            Jet::new(a.value + b.value, a.deriv + b.deriv)
        }
        Expression::Sub(a, b) => {
            let (a, b) = (eval(a, z)?, eval(b, z)?);
            Jet::new(a.value - b.value, a.deriv - b.deriv)
        }
        Expression::Mul(a, b) => {
            let (a, b) = (eval(a, z)?, eval(b, z)?);
            Jet::new(a.value * b.value, a.value * b.deriv + a.deriv * b.value)
        }
        Expression::Div(a, b) => {
            let (a, b) = (eval(a, z)?, eval(b, z)?);
            if b.value == zero {
                return Err(EvalError::Pole { z });
            }
            let q = a.value / b.value;
            Jet::new(q, (a.deriv - q * b.deriv) / b.value)
        }
        Expression::Neg(a) => {
            let a = eval(a, z)?;
            Jet::new(-a.value, -a.deriv)
        }
        Expression::IntPow(a, k) => {
            let a = eval(a, z)?;
            let k = i64::from(*k);
            if k == 0 {
                Jet::constant(Complex64::new(1.0, 0.0))
            } else {
                let lower = powi(a.value, k - 1).ok_or(EvalError::Pole { z })?;
                Jet::new(lower * a.value, lower * a.deriv * k as f64)
            }
        }
        Expression::Exp(a) => {
            let a = eval(a, z)?;
            let v = a.value.exp();
            Jet::new(v, v * a.deriv)
        }
    };
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(EvalError::NonFinite { z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn jet(text: &str, z: Complex64) -> Jet {
        parse(text).unwrap().eval_jet(z).unwrap()
    }

    #[test]
    fn power_rule() {
        assert_eq!(jet("z^3", c(2.0, 0.0)), Jet::new(c(8.0, 0.0), c(12.0, 0.0)));
    }

    #[test]
    fn exponential() {
        assert_eq!(jet("exp(z)", c(0.0, 0.0)), Jet::new(c(1.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn quotient_rule() {
        // f' = 2/(z+1)^2 = 1/2 at z = 1
        let j = jet("(z-1)/(z+1)", c(1.0, 0.0));
        assert_eq!(j.value, c(0.0, 0.0));
        assert!((j.deriv - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_power() {
        let j = jet("z^-2", c(2.0, 0.0));
        assert!((j.value - c(0.25, 0.0)).norm() < 1e-15);
        assert!((j.deriv - c(-0.25, 0.0)).norm() < 1e-15);
        let p = parse("z^-1").unwrap();
        assert_eq!(p.eval_jet(c(0.0, 0.0)), Err(EvalError::Pole { z: c(0.0, 0.0) }));
    }

    #[test]
    fn zero_power_is_one() {
        assert_eq!(jet("z^0", c(0.0, 0.0)), Jet::constant(c(1.0, 0.0)));
    }

    #[test]
    fn pole_and_overflow_are_errors() {
        let p = parse("1/(z-1)").unwrap();
        assert_eq!(p.eval_jet(c(1.0, 0.0)), Err(EvalError::Pole { z: c(1.0, 0.0) }));
        let big = parse("exp(z)").unwrap();
        assert_eq!(big.eval_jet(c(1000.0, 0.0)), Err(EvalError::NonFinite { z: c(1000.0, 0.0) }));
    }

    #[test]
    fn imaginary_unit() {
        let j = jet("i*z", c(0.0, 1.0));
        assert_eq!(j.value, c(-1.0, 0.0));
        assert_eq!(j.deriv, c(0.0, 1.0));
    }

    #[test]
    fn closures_are_evaluators() {
        let f = |z: Complex64| Ok(Jet::new(z * z, z * 2.0));
        assert_eq!(f.eval_jet(c(3.0, 0.0)).unwrap().deriv, c(6.0, 0.0));
    }

    #[test]
    fn log_derivative_of_zero_value_is_none() {
        assert_eq!(Jet::new(c(0.0, 0.0), c(1.0, 0.0)).log_derivative(), None);
        assert_eq!(Jet::new(c(2.0, 0.0), c(1.0, 0.0)).log_derivative(), Some(c(0.5, 0.0)));
    }
}

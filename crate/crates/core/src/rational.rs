//! Exact rational functions in coprime, monic-denominator form.

use std::fmt;

use num_traits::Zero;

use crate::error::ExactError;
use crate::gaussian::GaussianRational;
use crate::poly::Polynomial;

/// `numer / denom` with `gcd(numer, denom) = 1`, `denom` monic and `numer`
/// nonzero. The normalization makes structural equality coincide with
/// equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionExact {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunctionExact {
    /// Reduces `p / q` to lowest terms.
    pub fn reduce(p: &Polynomial, q: &Polynomial) -> Result<Self, ExactError> {
        if q.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if p.is_zero() {
            return Err(ExactError::ZeroNumerator);
        }
        let g = p.gcd(q)?;
        let numer = p.exact_div(&g)?;
        let denom = q.exact_div(&g)?;
        let lc = denom.leading().and_then(GaussianRational::inv).expect("nonzero denominator");
        Ok(Self { numer: numer.scale(&lc), denom: denom.scale(&lc) })
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self, ExactError> {
        Self::reduce(p, &Polynomial::one())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    /// `m = deg numer`.
    pub fn numer_degree(&self) -> usize {
        self.numer.degree().expect("numerator is nonzero")
    }

    /// `n = deg denom`.
    pub fn denom_degree(&self) -> usize {
        self.denom.degree().expect("denominator is nonzero")
    }

    /// `deg numer − deg denom`.
    pub fn divisor(&self) -> i64 {
        self.numer_degree() as i64 - self.denom_degree() as i64
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom_degree() == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(&self.numer.mul(&other.numer), &self.denom.mul(&other.denom))
            .expect("product of nonzero rational functions is nonzero")
    }

    pub fn eval(&self, z: &GaussianRational) -> Result<GaussianRational, ExactError> {
        let q = self.denom.eval(z);
        if q.is_zero() {
            return Err(ExactError::Pole(Box::new(z.clone())));
        }
        Ok(&self.numer.eval(z) / &q)
    }

    /// `f'/f = (P'Q − PQ') / (PQ)`, left unreduced.
    pub fn log_derivative(&self) -> LogDerivative {
        let p = &self.numer;
        let q = &self.denom;
        LogDerivative { numer: p.derivative().mul(q).sub(&p.mul(&q.derivative())), denom: p.mul(q) }
    }

    /// Larger of the Cauchy bounds of numerator and denominator; every zero
    /// and pole lies strictly inside this radius.
    pub fn joint_cauchy_bound(&self) -> f64 {
        let a = self.numer.cauchy_root_bound().expect("nonzero");
        let b = self.denom.cauchy_root_bound().expect("nonzero");
        a.max(b)
    }

    /// Expression text that parses back to this function.
    pub fn to_expr_text(&self) -> String {
        if self.is_polynomial() {
            self.numer.to_expr_text()
        } else {
            format!("({}) / ({})", self.numer.to_expr_text(), self.denom.to_expr_text())
        }
    }
}

impl fmt::Display for RationalFunctionExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numer, self.denom)
    }
}

/// Formal quotient `numer / denom`; the numerator may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivative {
    pub numer: Polynomial,
    pub denom: Polynomial,
}

impl LogDerivative {
    pub fn eval(&self, z: &GaussianRational) -> Result<GaussianRational, ExactError> {
        let q = self.denom.eval(z);
        if q.is_zero() {
            return Err(ExactError::Pole(Box::new(z.clone())));
        }
        Ok(&self.numer.eval(z) / &q)
    }
}

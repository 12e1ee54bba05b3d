//! Rational functions given by their zeros and poles.

use num_complex::Complex64;
use num_traits::One;

use crate::error::ExactError;
use crate::gaussian::GaussianRational;
use crate::poly::Polynomial;
use crate::rational::RationalFunctionExact;

/// `scale · ∏(z − aₖ) / ∏(z − bₖ)`. Repeated entries encode multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub zeros: Vec<GaussianRational>,
    pub poles: Vec<GaussianRational>,
    pub scale: GaussianRational,
}

impl FactoredRational {
    pub fn new(zeros: Vec<GaussianRational>, poles: Vec<GaussianRational>) -> Self {
        Self { zeros, poles, scale: GaussianRational::one() }
    }

    pub fn with_scale(mut self, scale: GaussianRational) -> Self {
        self.scale = scale;
        self
    }

    /// Expanded and reduced. Fails only for a zero scale.
    pub fn to_exact(&self) -> Result<RationalFunctionExact, ExactError> {
        let p = Polynomial::from_roots(&self.zeros).scale(&self.scale);
        let q = Polynomial::from_roots(&self.poles);
        RationalFunctionExact::reduce(&p, &q)
    }

    pub fn zeros_f64(&self) -> Vec<Complex64> {
        self.zeros.iter().map(GaussianRational::to_complex).collect()
    }

    pub fn poles_f64(&self) -> Vec<Complex64> {
        self.poles.iter().map(GaussianRational::to_complex).collect()
    }

    /// `Σ|aₖ| + Σ|bₖ|`.
    pub fn modulus_sum(&self) -> f64 {
        self.zeros_f64().iter().chain(self.poles_f64().iter()).map(|z| z.norm()).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.zeros_f64().iter().chain(self.poles_f64().iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Zeros minus poles strictly inside `|z − center| < radius`.
    pub fn count_inside(&self, center: Complex64, radius: f64) -> i64 {
        let inside = |v: &[Complex64]| v.iter().filter(|a| (**a - center).norm() < radius).count() as i64;
        inside(&self.zeros_f64()) - inside(&self.poles_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_pair_reduces() {
        let one = GaussianRational::from_integer(1);
        let two = GaussianRational::from_integer(2);
        let f = FactoredRational::new(vec![one.clone(), two.clone()], vec![two]);
        let exact = f.to_exact().unwrap();
        assert_eq!(exact.divisor(), 1);
        assert_eq!(exact.numer(), &Polynomial::from_integers(&[-1, 1]));
    }

    #[test]
    fn count_inside_respects_multiplicity() {
        let one = GaussianRational::from_integer(1);
        let three = GaussianRational::from_integer(3);
        let f = FactoredRational::new(vec![one.clone(), one, three], vec![GaussianRational::from_integer(-2)]);
        assert_eq!(f.count_inside(Complex64::new(0.0, 0.0), 1.5), 2);
        assert_eq!(f.count_inside(Complex64::new(0.0, 0.0), 2.5), 1);
        assert_eq!(f.modulus_sum(), 7.0);
        assert_eq!(f.max_modulus(), 3.0);
    }
}

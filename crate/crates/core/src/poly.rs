//! Dense univariate polynomials over the Gaussian rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ExactError;
use crate::gaussian::GaussianRational;

/// Coefficients in ascending degree order. The zero polynomial is the empty
/// vector, so `degree()` is `None` for it rather than `Some(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_integer(c)).collect())
    }

    /// `∏ (z − rᵢ)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a GaussianRational>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| acc.mul(&Self::new(vec![-r, GaussianRational::one()])))
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussianRational::zero();
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).unwrap_or(&zero);
                    let b = other.coeffs.get(k).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    ///
    /// Runs over Gaussian integers: with `z = w/s` and coefficients `Aⱼ/D`,
    /// `p(z) = Σ Aⱼ·wʲ·s^(n−j) / (D·sⁿ)`, so only the final quotient is
    /// reduced.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let Some(n) = self.degree() else {
            return GaussianRational::zero();
        };
        let s = z.re.denom().lcm(z.im.denom());
        let w = (z.re.numer() * (&s / z.re.denom()), z.im.numer() * (&s / z.im.denom()));
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()).lcm(c.im.denom()));
        let scaled = |q: &BigRational| q.numer() * (&d / q.denom());
        let mut acc = (scaled(&self.coeffs[n].re), scaled(&self.coeffs[n].im));
        let mut s_pow = BigInt::one();
        for c in self.coeffs[..n].iter().rev() {
            s_pow *= &s;
            let re = &acc.0 * &w.0 - &acc.1 * &w.1 + scaled(&c.re) * &s_pow;
            let im = &acc.0 * &w.1 + &acc.1 * &w.0 + scaled(&c.im) * &s_pow;
            acc = (re, im);
        }
        let den = d * s_pow;
        GaussianRational::new(BigRational::new(acc.0, den.clone()), BigRational::new(acc.1, den))
    }

    /// Scaled so the leading coefficient is one. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let inv_lead = divisor.leading().and_then(GaussianRational::inv).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![GaussianRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::InexactDivision)
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm. Each
    /// remainder is made monic before the next step to keep coefficient
    /// sizes in check.
    pub fn gcd(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() && other.is_zero() {
            return Err(ExactError::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// Cauchy bound `1 + max |aᵢ|/|a_deg|` over the non-leading coefficients,
    /// rounded upward so every root has modulus strictly below it.
    pub fn cauchy_root_bound(&self) -> Result<f64, ExactError> {
        let lead = self.leading().ok_or(ExactError::ZeroPolynomial)?;
        let lead_sq = lead.norm_sqr();
        let max_ratio_sq = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.norm_sqr() / &lead_sq)
            .max()
            .unwrap_or_else(BigRational::zero);
        let s = sqrt_upper(&max_ratio_sq);
        Ok(add_upper(1.0, s))
    }

    /// Float approximations of the coefficients.
    pub fn to_complex_coeffs(&self) -> Vec<num_complex::Complex64> {
        self.coeffs.iter().map(GaussianRational::to_complex).collect()
    }

    /// Expression text that parses back to this exact polynomial, for
    /// example `3*z^2 + (1/2)*z + (-1 + 2*i)`.
    pub fn to_expr_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = coeff_text(c);
            terms.push(match k {
                0 => coeff,
                1 => format!("{coeff}*z"),
                _ => format!("{coeff}*z^{k}"),
            });
        }
        terms.join(" + ")
    }
}

fn rational_expr(q: &BigRational) -> String {
    let body =
        if q.denom().is_one() { q.numer().abs().to_string() } else { format!("{}/{}", q.numer().abs(), q.denom()) };
    if q.is_negative() {
        format!("(-{body})")
    } else if q.denom().is_one() {
        body
    } else {
        format!("({body})")
    }
}

fn coeff_text(c: &GaussianRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => rational_expr(&c.re),
        (true, false) => format!("({}*i)", rational_expr(&c.im)),
        (false, false) => format!("({} + {}*i)", rational_expr(&c.re), rational_expr(&c.im)),
    }
}

/// Smallest float we can certify to be `>= q` exactly.
fn rational_to_f64_upper(q: &BigRational) -> f64 {
    let mut f = q.to_f64().unwrap_or(f64::INFINITY);
    while f.is_finite() && BigRational::from_float(f).is_some_and(|e| &e < q) {
        f = f.next_up();
    }
    f
}

/// Float `s` with `s² >= q`, `q >= 0`.
fn sqrt_upper(q: &BigRational) -> f64 {
    let mut s = rational_to_f64_upper(q).sqrt();
    while s.is_finite() {
        let e = BigRational::from_float(s).expect("finite");
        if &(&e * &e) >= q {
            break;
        }
        s = s.next_up();
    }
    s
}

/// Float `>= a + b` for finite nonnegative `a`, `b`.
fn add_upper(a: f64, b: f64) -> f64 {
    let mut s = a + b;
    if let (Some(ea), Some(eb)) = (BigRational::from_float(a), BigRational::from_float(b)) {
        let exact = ea + eb;
        while s.is_finite() && BigRational::from_float(s).is_some_and(|e| e < exact) {
            s = s.next_up();
        }
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_text())
    }
}

/// Convenience for tests and generators: `BigRational` from `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_integers(c)
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), Polynomial::zero());
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[-1, 1]).mul(&p(&[1, 1])), p(&[-1, 0, 1]));
        let q = p(&[2, -3, 1]);
        assert_eq!(q.add(&Polynomial::zero()), q);
        assert_eq!(p(&[7]).derivative(), Polynomial::zero());
        assert_eq!(q.sub(&q), Polynomial::zero());
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn horner_matches_naive_power_sum() {
        let c = |a: i64, b: i64, d: i64| GaussianRational::new(ratio(a, d), ratio(b, d));
        let poly = Polynomial::new(vec![c(1, -2, 3), c(0, 5, 7), c(-4, 0, 1), c(2, 2, 9)]);
        let z = c(-5, 11, 6);
        let naive = poly
            .coeffs()
            .iter()
            .enumerate()
            .fold(GaussianRational::zero(), |acc, (k, a)| &acc + &(a * &z.pow(k as u32)));
        assert_eq!(poly.eval(&z), naive);
        assert_eq!(Polynomial::zero().eval(&z), GaussianRational::zero());
        assert_eq!(p(&[4]).eval(&z), GaussianRational::from_integer(4));
    }

    #[test]
    fn degree_of_product_adds() {
        let a = p(&[1, 2, 3]);
        let b = p(&[4, 0, 0, 5]);
        assert_eq!(a.mul(&b).degree(), Some(5));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, -2, 7, 1]);
        let b = p(&[1, 2, 0]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.div_rem(&Polynomial::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-2, 1])).unwrap(), Polynomial::one());
        assert_eq!(Polynomial::zero().gcd(&Polynomial::zero()), Err(ExactError::GcdOfZeros));
        assert_eq!(Polynomial::zero().gcd(&p(&[2, 4])).unwrap(), p(&[2, 4]).monic());
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // (z-1)^2 (z+2) and (z-1)(z-3)
        let a = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[-3, 1]));
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        // exact division oracle
        assert!(a.exact_div(&g).is_ok());
        assert!(b.exact_div(&g).is_ok());
        assert_eq!(a.exact_div(&g).unwrap().gcd(&b.exact_div(&g).unwrap()).unwrap(), Polynomial::one());
    }

    #[test]
    fn cauchy_bound_examples() {
        assert_eq!(p(&[-4, 0, 1]).cauchy_root_bound().unwrap(), 5.0);
        assert_eq!(p(&[0, 0, 0, 1]).cauchy_root_bound().unwrap(), 1.0);
        let b = p(&[2, -3, 1]).cauchy_root_bound().unwrap();
        assert_eq!(b, 4.0);
        assert!(1.0 < b && 2.0 < b);
        assert_eq!(p(&[7]).cauchy_root_bound().unwrap(), 1.0);
        assert_eq!(Polynomial::zero().cauchy_root_bound(), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn cauchy_bound_rounds_up() {
        // |1+i| / 3 = sqrt(2)/3 is irrational; the float must dominate it.
        let c = GaussianRational::new(ratio(1, 1), ratio(1, 1));
        let poly = Polynomial::new(vec![c, GaussianRational::from_integer(3)]);
        let b = poly.cauchy_root_bound().unwrap();
        let s = BigRational::from_float(b - 1.0).unwrap();
        assert!(&s * &s >= ratio(2, 9));
    }

    #[test]
    fn expr_text_is_readable() {
        assert_eq!(p(&[-1, 0, 3]).to_expr_text(), "3*z^2 + (-1)");
        let c = GaussianRational::new(ratio(1, 2), ratio(-3, 1));
        assert_eq!(Polynomial::constant(c).to_expr_text(), "((1/2) + (-3)*i)");
    }
}

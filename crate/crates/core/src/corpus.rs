//! Seeded random generators for test corpora.
//!
//! Zeros and poles are drawn on a decimal grid so every generated function
//! has an exact expanded form whose text round-trips through the parser.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::expr::{Expression, Literal};
use crate::factored::FactoredRational;
use crate::gaussian::GaussianRational;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactoredParams {
    /// Maximum number of zeros, and separately of poles.
    pub max_degree: usize,
    /// Zeros and poles are sampled uniformly in `|z| <= disc_radius`.
    pub disc_radius: f64,
    /// Minimum distance between any two zeros/poles.
    pub min_separation: f64,
    /// Coordinates are rounded to multiples of `1/grid`.
    pub grid: i64,
}

impl Default for FactoredParams {
    fn default() -> Self {
        Self { max_degree: 8, disc_radius: 4.0, min_separation: 1e-2, grid: 1000 }
    }
}

fn grid_point(z: Complex64, grid: i64) -> GaussianRational {
    let q = |x: f64| BigRational::new(BigInt::from((x * grid as f64).round() as i64), BigInt::from(grid));
    GaussianRational::new(q(z.re), q(z.im))
}

/// Uniform point of the closed disc, snapped to the grid (and kept inside).
pub fn sample_disc_point<R: Rng + ?Sized>(rng: &mut R, radius: f64, grid: i64) -> GaussianRational {
    loop {
        let z = Complex64::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
        if z.norm() > radius {
            continue;
        }
        let g = grid_point(z, grid);
        if g.to_complex().norm() <= radius {
            return g;
        }
    }
}

/// Random `scale·∏(z − aₖ)/∏(z − bₖ)` with distinct, well-separated zeros
/// and poles (so the factored form is already coprime).
pub fn sample_factored<R: Rng + ?Sized>(rng: &mut R, params: &FactoredParams) -> FactoredRational {
    let m = rng.gen_range(0..=params.max_degree);
    let n = rng.gen_range(0..=params.max_degree);
    let mut points: Vec<GaussianRational> = Vec::with_capacity(m + n);
    while points.len() < m + n {
        let p = sample_disc_point(rng, params.disc_radius, params.grid);
        let pz = p.to_complex();
        if points.iter().all(|q| (q.to_complex() - pz).norm() >= params.min_separation) {
            points.push(p);
        }
    }
    let poles = points.split_off(m);
    let scales = [(1, 0), (2, 0), (-3, 0), (1, 1), (0, -5)];
    let &(re, im) = scales.choose(rng).expect("non-empty");
    let scale =
        GaussianRational::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)));
    FactoredRational::new(points, poles).with_scale(scale)
}

/// Random polynomial with integer coefficients in `[-coeff_bound, coeff_bound]`
/// and exact degree `degree` (nonzero leading coefficient).
pub fn random_integer_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize, coeff_bound: i64) -> Polynomial {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-coeff_bound..=coeff_bound)).collect();
    while coeffs[degree] == 0 {
        coeffs[degree] = rng.gen_range(-coeff_bound..=coeff_bound);
    }
    Polynomial::from_integers(&coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExprParams {
    pub max_depth: usize,
    pub allow_exp: bool,
    /// Exponents of `IntPow` nodes are drawn from `-max_power..=max_power`.
    pub max_power: i32,
    /// Include decimal literals with fractional parts and exponents.
    pub rich_literals: bool,
}

impl Default for ExprParams {
    fn default() -> Self {
        Self { max_depth: 8, allow_exp: true, max_power: 4, rich_literals: true }
    }
}

fn random_literal<R: Rng + ?Sized>(rng: &mut R, rich: bool) -> Literal {
    if rng.gen_bool(0.15) {
        return Literal::ImaginaryUnit;
    }
    let text = if rich && rng.gen_bool(0.4) {
        match rng.gen_range(0..3) {
            0 => format!("{}.{}", rng.gen_range(0..20), rng.gen_range(0..100)),
            1 => format!("{}e-{}", rng.gen_range(1..50), rng.gen_range(1..3)),
            _ => format!(".{}", rng.gen_range(1..1000)),
        }
    } else {
        rng.gen_range(1..10).to_string()
    };
    Literal::decimal(text).expect("finite literal")
}

/// Random expression tree of depth at most `params.max_depth`.
pub fn random_expression<R: Rng + ?Sized>(rng: &mut R, params: &ExprParams) -> Expression {
    gen_expr(rng, params, params.max_depth)
}

fn gen_expr<R: Rng + ?Sized>(rng: &mut R, p: &ExprParams, depth: usize) -> Expression {
    if depth <= 1 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.55) {
            Expression::Variable
        } else {
            Expression::Constant(random_literal(rng, p.rich_literals))
        };
    }
    let sub = |rng: &mut R| gen_expr(rng, p, depth - 1);
    let choice = rng.gen_range(0..if p.allow_exp { 8 } else { 7 });
    match choice {
        0 => Expression::add(sub(rng), sub(rng)),
        1 => Expression::sub(sub(rng), sub(rng)),
        2 | 3 => Expression::mul(sub(rng), sub(rng)),
        4 => {
            let num = sub(rng);
            let mut den = sub(rng);
            if matches!(&den, Expression::Constant(Literal::Decimal { value, .. }) if *value == 0.0) {
                den = Expression::Variable;
            }
            Expression::div(num, den)
        }
        5 => Expression::neg(sub(rng)),
        6 => Expression::pow(sub(rng), rng.gen_range(-p.max_power..=p.max_power)),
        _ => Expression::exp(sub(rng)),
    }
}

/// `α` choices for `R(z)·exp(α·z)` corpora, as expression text and value.
pub const EXP_RATES: [(&str, Complex64); 4] = [
    ("1", Complex64::new(1.0, 0.0)),
    ("i", Complex64::new(0.0, 1.0)),
    ("(-2)", Complex64::new(-2.0, 0.0)),
    ("(0.5*i)", Complex64::new(0.0, 0.5)),
];

/// Text of `R(z)·exp(α·z)` for an exact `R` given as expression text.
pub fn times_exp_text(rational_text: &str, rate_text: &str) -> String {
    format!("({rational_text}) * exp({rate_text}*z)")
}

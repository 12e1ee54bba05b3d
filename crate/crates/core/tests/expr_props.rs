use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratchar::corpus::{random_expression, ExprParams};
use ratchar::expr::{as_exact_rational, parse, ExactForm, Expression, JetEval};
use ratchar::GaussianRational;

/// Smallest |value| of any `Div` denominator or negative-power base in the
/// tree at `z`, and the largest |value| of any node. Used to keep samples
/// away from poles and overflow.
fn conditioning(e: &Expression, z: Complex64) -> (f64, f64) {
    fn walk(e: &Expression, z: Complex64, near: &mut f64, big: &mut f64) {
        if let Ok(j) = e.eval_jet(z) {
            *big = big.max(j.value.norm()).max(j.deriv.norm());
        } else {
            *near = 0.0;
            return;
        }
        match e {
            Expression::Variable | Expression::Constant(_) => {}
            Expression::Neg(a) | Expression::Exp(a) => walk(a, z, near, big),
            Expression::IntPow(a, k) => {
                if *k < 0 {
                    if let Ok(j) = a.eval_jet(z) {
                        *near = near.min(j.value.norm());
                    }
                }
                walk(a, z, near, big)
            }
            Expression::Div(a, b) => {
                if let Ok(j) = b.eval_jet(z) {
                    *near = near.min(j.value.norm());
                }
                walk(a, z, near, big);
                walk(b, z, near, big);
            }
            Expression::Add(a, b) | Expression::Sub(a, b) | Expression::Mul(a, b) => {
                walk(a, z, near, big);
                walk(b, z, near, big);
            }
        }
    }
    let (mut near, mut big) = (f64::INFINITY, 0.0f64);
    walk(e, z, &mut near, &mut big);
    (near, big)
}

#[test]
fn round_trip_of_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let params = ExprParams::default();
    for _ in 0..1000 {
        let e = random_expression(&mut rng, &params);
        let text = e.print_canonical();
        assert_eq!(parse(&text).unwrap(), e, "{text}");
    }
}

#[test]
fn forward_mode_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let params = ExprParams { max_depth: 4, max_power: 3, rich_literals: false, ..Default::default() };
    let mut checked = 0;
    while checked < 1000 {
        let e = random_expression(&mut rng, &params);
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (near, big) = conditioning(&e, z);
        if near < 0.2 || big > 1e6 {
            continue;
        }
        let jet = e.eval_jet(z).unwrap();
        if jet.deriv.norm() < 1e-3 * (1.0 + jet.value.norm()) {
            continue;
        }
        let h = 1e-6 * (1.0 + z.norm());
        let fd = (e.eval_jet(z + h).unwrap().value - e.eval_jet(z - h).unwrap().value) / (2.0 * h);
        let rel = (jet.deriv - fd).norm() / jet.deriv.norm();
        assert!(rel < 1e-6, "{e} at {z}: jet {} fd {fd} rel {rel}", jet.deriv);
        checked += 1;
    }
}

#[test]
fn jet_value_agrees_with_exact_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = ExprParams { max_depth: 4, allow_exp: false, max_power: 3, rich_literals: true };
    let mut checked = 0;
    while checked < 1000 {
        let e = random_expression(&mut rng, &params);
        let Ok(ExactForm::Rational(f)) = as_exact_rational(&e) else { continue };
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (near, big) = conditioning(&e, z);
        if near < 0.2 || big > 1e6 {
            continue;
        }
        let zq = GaussianRational::from_complex(z).unwrap();
        let Ok(exact) = f.eval(&zq) else { continue };
        let exact = exact.to_complex();
        let jet = e.eval_jet(z).unwrap().value;
        if exact.norm() < 1e-6 * big {
            continue;
        }
        let rel = (jet - exact).norm() / exact.norm();
        assert!(rel < 1e-12, "{e} at {z}: jet {jet} exact {exact} rel {rel}");
        checked += 1;
    }
}

fn leaf() -> impl Strategy<Value = Expression> {
    prop_oneof![
        Just(Expression::Variable),
        (1u32..20).prop_map(|n| Expression::number(&n.to_string())),
        Just(parse("i").unwrap()),
    ]
}

fn tree() -> impl Strategy<Value = Expression> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::mul(a, b)),
            (inner.clone(), -3i32..4).prop_map(|(a, k)| Expression::pow(a, k)),
            inner.clone().prop_map(Expression::neg),
            inner.prop_map(|a| Expression::exp(Expression::mul(Expression::number("0.1"), a))),
        ]
    })
}

proptest! {
    #[test]
    fn product_jet_is_leibniz(a in tree(), b in tree(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let z = Complex64::new(re, im);
        let (Ok(ja), Ok(jb)) = (a.eval_jet(z), b.eval_jet(z)) else { return Ok(()) };
        let Ok(jp) = Expression::mul(a, b).eval_jet(z) else { return Ok(()) };
        prop_assert_eq!(jp.value, ja.value * jb.value);
        prop_assert_eq!(jp.deriv, ja.value * jb.deriv + ja.deriv * jb.value);
    }

    #[test]
    fn canonical_text_round_trips(e in tree()) {
        prop_assert_eq!(parse(&e.print_canonical()).unwrap(), e);
    }
}

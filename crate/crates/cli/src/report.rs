//! Serializable reports and their text rendering.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use ratchar::contour::WindingResult;
use ratchar::estimate::{DivisorEstimate, FtaReport, RadiusProbe, Verdict};
use ratchar::gaussian::rational_text;
use ratchar::{Polynomial, RationalFunctionExact};

pub const SCHEMA_VERSION: u32 = 1;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct Envelope<P: Serialize, R: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub input: String,
    pub params: P,
    pub result: R,
}

#[derive(Serialize)]
pub struct NoParams {}

#[derive(Serialize, Clone, Copy)]
pub struct QuadratureParams {
    pub nodes: usize,
    pub max_nodes: usize,
    pub tol: f64,
}

#[derive(Serialize)]
pub struct ClassifyParamsOut {
    pub r0: f64,
    pub growth: f64,
    pub steps: usize,
    #[serde(flatten)]
    pub quadrature: QuadratureParams,
    pub tol_int: f64,
    pub decay_factor: f64,
}

#[derive(Serialize)]
pub struct WindingParamsOut {
    pub center: [f64; 2],
    pub radius: f64,
    #[serde(flatten)]
    pub quadrature: QuadratureParams,
}

#[derive(Serialize)]
pub struct PolyOut {
    pub degree: usize,
    /// Exact coefficients, ascending degree, as `[re, im]` rational strings.
    pub coeffs: Vec<[String; 2]>,
    pub text: String,
}

impl PolyOut {
    fn new(p: &Polynomial) -> Self {
        Self {
            degree: p.degree().expect("nonzero"),
            coeffs: p.coeffs().iter().map(|c| [rational_text(&c.re), rational_text(&c.im)]).collect(),
            text: p.to_expr_text(),
        }
    }
}

#[derive(Serialize)]
pub struct DivisorResult {
    pub numerator: PolyOut,
    pub denominator: PolyOut,
    pub m: usize,
    pub n: usize,
    pub d: i64,
}

impl DivisorResult {
    pub fn new(f: &RationalFunctionExact) -> Self {
        Self {
            numerator: PolyOut::new(f.numer()),
            denominator: PolyOut::new(f.denom()),
            m: f.numer_degree(),
            n: f.denom_degree(),
            d: f.divisor(),
        }
    }

    pub fn text(&self, input: &str) -> String {
        let mut s = String::new();
        writeln!(s, "input: {input}").unwrap();
        writeln!(s, "P(z) = {}", self.numerator.text).unwrap();
        writeln!(s, "Q(z) = {}", self.denominator.text).unwrap();
        writeln!(s, "m = deg P = {}", self.m).unwrap();
        writeln!(s, "n = deg Q = {}", self.n).unwrap();
        writeln!(s, "d = m - n = {}", self.d).unwrap();
        s
    }
}

#[derive(Serialize)]
pub struct WindingOut {
    pub raw: [f64; 2],
    pub nearest_int: i64,
    pub residual: f64,
    pub nodes: usize,
    pub converged: bool,
    pub radius_used: f64,
}

impl From<&WindingResult> for WindingOut {
    fn from(w: &WindingResult) -> Self {
        Self {
            raw: pair(w.raw),
            nearest_int: w.nearest_int,
            residual: w.residual,
            nodes: w.nodes_used,
            converged: w.converged,
            radius_used: w.radius_used,
        }
    }
}

impl WindingOut {
    fn text_lines(&self, s: &mut String) {
        writeln!(s, "raw = {:e} {:+e}i", self.raw[0], self.raw[1]).unwrap();
        writeln!(s, "nearest_int = {}", self.nearest_int).unwrap();
        writeln!(s, "residual = {:e}", self.residual).unwrap();
        writeln!(s, "nodes = {}", self.nodes).unwrap();
        writeln!(s, "converged = {}", self.converged).unwrap();
        writeln!(s, "radius_used = {}", self.radius_used).unwrap();
    }
}

#[derive(Serialize)]
pub struct WindingReport {
    #[serde(flatten)]
    pub winding: WindingOut,
}

impl WindingReport {
    pub fn text(&self, input: &str, params: &WindingParamsOut) -> String {
        let mut s = String::new();
        writeln!(s, "input: {input}").unwrap();
        writeln!(s, "circle: center {} {:+}i, radius {}", params.center[0], params.center[1], params.radius).unwrap();
        self.winding.text_lines(&mut s);
        s
    }
}

#[derive(Serialize)]
pub struct VerdictOut {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict> for VerdictOut {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Rational(d) => Self { kind: "rational", d: Some(*d), reason: None },
            Verdict::NotRational(r) => Self { kind: "not_rational", d: None, reason: Some(r.as_str().into()) },
            Verdict::Inconclusive(r) => Self { kind: "inconclusive", d: None, reason: Some(r.clone()) },
        }
    }
}

#[derive(Serialize)]
pub struct ProbeOut {
    pub radius: f64,
    pub mean: [f64; 2],
    pub spread: f64,
    pub winding: WindingOut,
}

impl From<&RadiusProbe> for ProbeOut {
    fn from(p: &RadiusProbe) -> Self {
        Self { radius: p.radius, mean: pair(p.mean_zff), spread: p.spread, winding: (&p.winding).into() }
    }
}

#[derive(Serialize)]
pub struct ExactOut {
    pub d: i64,
}

#[derive(Serialize)]
pub struct ClassifyResult {
    pub verdict: VerdictOut,
    pub probes: Vec<ProbeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

impl ClassifyResult {
    pub fn new(est: &DivisorEstimate, exact: Option<&RationalFunctionExact>) -> Self {
        let exact_d = exact.map(RationalFunctionExact::divisor);
        Self {
            verdict: (&est.verdict).into(),
            probes: est.probes.iter().map(ProbeOut::from).collect(),
            exact: exact_d.map(|d| ExactOut { d }),
            agrees: exact_d.map(|d| est.verdict == Verdict::Rational(d)),
        }
    }

    pub fn text(&self, input: &str, params: &ClassifyParamsOut) -> String {
        let mut s = String::new();
        writeln!(s, "input: {input}").unwrap();
        writeln!(
            s,
            "schedule: r0 = {}, growth = {}, steps = {}; quadrature: nodes = {}, max_nodes = {}, tol = {:e}; tol_int = {:e}, decay_factor = {}",
            params.r0,
            params.growth,
            params.steps,
            params.quadrature.nodes,
            params.quadrature.max_nodes,
            params.quadrature.tol,
            params.tol_int,
            params.decay_factor
        )
        .unwrap();
        writeln!(
            s,
            "{:>14}  {:>18}  {:>18}  {:>11}  {:>7}  {:>11}  {:>6}  {:>9}",
            "radius", "mean.re", "mean.im", "spread", "winding", "residual", "nodes", "converged"
        )
        .unwrap();
        for p in &self.probes {
            writeln!(
                s,
                "{:>14}  {:>18.10e}  {:>18.10e}  {:>11.4e}  {:>7}  {:>11.4e}  {:>6}  {:>9}",
                p.radius,
                p.mean[0],
                p.mean[1],
                p.spread,
                p.winding.nearest_int,
                p.winding.residual,
                p.winding.nodes,
                p.winding.converged
            )
            .unwrap();
        }
        let v = &self.verdict;
        match (v.d, &v.reason) {
            (Some(d), _) => writeln!(s, "verdict: {} (d = {d})", v.kind).unwrap(),
            (None, Some(r)) => writeln!(s, "verdict: {} ({r})", v.kind).unwrap(),
            (None, None) => writeln!(s, "verdict: {}", v.kind).unwrap(),
        }
        if let (Some(exact), Some(agrees)) = (&self.exact, self.agrees) {
            writeln!(s, "self-check: exact d = {}, numeric {}", exact.d, if agrees { "agrees" } else { "DISAGREES" })
                .unwrap();
        }
        s
    }
}

#[derive(Serialize)]
pub struct FtaResult {
    pub degree: usize,
    pub count: i64,
    pub pass: bool,
    pub radius: f64,
    pub winding: WindingOut,
}

impl From<&FtaReport> for FtaResult {
    fn from(r: &FtaReport) -> Self {
        Self { degree: r.degree, count: r.count, pass: r.pass, radius: r.radius, winding: (&r.winding).into() }
    }
}

impl FtaResult {
    pub fn text(&self, input: &str) -> String {
        let mut s = String::new();
        writeln!(s, "input: {input}").unwrap();
        writeln!(s, "degree = {}", self.degree).unwrap();
        writeln!(s, "radius = {}", self.radius).unwrap();
        writeln!(s, "count = {}", self.count).unwrap();
        self.winding.text_lines(&mut s);
        writeln!(s, "{}", if self.pass { "pass" } else { "FAIL" }).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratchar::estimate::NotRationalReason;

    #[test]
    fn verdict_kinds() {
        let v = |x: &Verdict| serde_json::to_value(VerdictOut::from(x)).unwrap();
        assert_eq!(v(&Verdict::Rational(-2)), serde_json::json!({"kind": "rational", "d": -2}));
        assert_eq!(
            v(&Verdict::NotRational(NotRationalReason::NonIntegerWinding)),
            serde_json::json!({"kind": "not_rational", "reason": "non-integer-winding"})
        );
        assert_eq!(v(&Verdict::Inconclusive("x".into()))["kind"], "inconclusive");
    }

    #[test]
    fn polynomial_coefficients_are_exact_strings() {
        let p = Polynomial::from_integers(&[-1, 0, 3]).scale(&ratchar::poly::ratio(1, 2).into());
        let out = PolyOut::new(&p);
        assert_eq!(out.degree, 2);
        assert_eq!(out.coeffs[0], ["-1/2".to_string(), "0".to_string()]);
        assert_eq!(out.coeffs[2][0], "3/2");
    }
}

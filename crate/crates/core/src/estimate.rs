//! Divisor estimation from the behavior of `z·f'(z)/f(z)` on growing circles.
//!
//! For rational `f = P/Q` the quantity `z·f'/f` tends to `deg P − deg Q`
//! uniformly in the angle; for `f = R·e^g` with nonconstant `g` it picks up
//! `z·g'(z)`, which is unbounded. The angle-average alone cannot see this
//! (`z·f'/f = z` averages to zero for `e^z`), so the classifier also tracks
//! the spread, the largest deviation from the average over the node set.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::contour::{circle_nodes, pairwise_sum, winding_with_samples, ContourSpec, WindingResult};
use crate::error::{EstimateError, EvalError, ExactError};
use crate::expr::{as_exact_rational, expression_from_rational, Expression, JetEval};
use crate::gaussian::GaussianRational;
use crate::poly::Polynomial;
use crate::rational::RationalFunctionExact;

/// Spreads at or below `SPREAD_NOISE_FLOOR·(1 + |d|)` count as already
/// converged; floating evaluation of `z·f'/f` cannot resolve anything finer.
pub const SPREAD_NOISE_FLOOR: f64 = 1e-10;

/// Per-doubling spread increase that marks unbounded growth.
pub const GROWTH_FACTOR: f64 = 1.5;

/// Default first radius when no Cauchy bound is available.
pub const FALLBACK_R0: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusSchedule {
    pub r0: f64,
    pub growth: f64,
    pub steps: usize,
}

impl Default for RadiusSchedule {
    fn default() -> Self {
        Self { r0: FALLBACK_R0, growth: 2.0, steps: 6 }
    }
}

impl RadiusSchedule {
    pub fn radii(&self) -> Vec<f64> {
        (0..self.steps).map(|k| self.r0 * self.growth.powi(k as i32)).collect()
    }

    pub fn validate(&self) -> Result<(), EstimateError> {
        let bad = |m: String| Err(EstimateError::InvalidArgument(m));
        if !(self.r0.is_finite() && self.r0 > 0.0) {
            return bad(format!("r0 must be positive, got {}", self.r0));
        }
        if !(self.growth.is_finite() && self.growth > 1.0) {
            return bad(format!("growth must exceed 1, got {}", self.growth));
        }
        if self.steps < 3 {
            return bad(format!("at least 3 steps are required, got {}", self.steps));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyParams {
    /// Largest winding residual still accepted as an integer.
    pub tol_int: f64,
    /// Minimum spread decrease per radius doubling for a rational verdict.
    pub decay_factor: f64,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        Self { tol_int: 1e-3, decay_factor: 1.5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusProbe {
    pub radius: f64,
    /// Angle-average of `z·f'/f` over the converged node set.
    pub mean_zff: Complex64,
    /// `maxⱼ |zⱼ·f'(zⱼ)/f(zⱼ) − mean_zff|`.
    pub spread: f64,
    pub winding: WindingResult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotRationalReason {
    Growth,
    NonIntegerWinding,
    Residual,
}

impl NotRationalReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NotRationalReason::Growth => "growth",
            NotRationalReason::NonIntegerWinding => "non-integer-winding",
            NotRationalReason::Residual => "residual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational(i64),
    NotRational(NotRationalReason),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorEstimate {
    /// Ordered by increasing radius.
    pub probes: Vec<RadiusProbe>,
    pub d_hat: Option<i64>,
    pub verdict: Verdict,
    /// `(radius, max |z·g'(z)|)` when zeros and poles are known.
    pub residual_trace: Option<Vec<(f64, f64)>>,
}

fn probe_at<F: JetEval + ?Sized>(f: &F, template: &ContourSpec, radius: f64) -> Result<RadiusProbe, EstimateError> {
    let spec = template.with_radius(radius);
    let (winding, samples) =
        winding_with_samples(f, &spec).map_err(|source| EstimateError::Contour { radius, source })?;
    let zff: Vec<Complex64> = samples.nodes.iter().zip(&samples.log_derivs).map(|(z, l)| z * l).collect();
    let mean_zff = pairwise_sum(&zff) / zff.len() as f64;
    let spread = zff.iter().map(|w| (w - mean_zff).norm()).fold(0.0, f64::max);
    Ok(RadiusProbe { radius: winding.radius_used, mean_zff, spread, winding })
}

/// Probes `z·f'/f` on circles of radius `r0·growthᵏ`, `k < steps`. The
/// verdict is left `Inconclusive`; see [`classify`].
pub fn limit_probe<F: JetEval + ?Sized>(
    f: &F,
    schedule: &RadiusSchedule,
    template: &ContourSpec,
) -> Result<DivisorEstimate, EstimateError> {
    schedule.validate()?;
    template
        .with_radius(schedule.r0)
        .validate()
        .map_err(|source| EstimateError::Contour { radius: schedule.r0, source })?;
    let results: Vec<Result<RadiusProbe, EstimateError>> =
        schedule.radii().par_iter().map(|&r| probe_at(f, template, r)).collect();
    let probes = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let d_hat = probes.last().filter(|p| p.winding.converged).map(|p| p.winding.nearest_int);
    Ok(DivisorEstimate { probes, d_hat, verdict: Verdict::Inconclusive("not classified".into()), residual_trace: None })
}

/// Spread change per radius doubling between two probes (`> 1` means decay).
fn decay_per_doubling(a: &RadiusProbe, b: &RadiusProbe) -> f64 {
    let doublings = (b.radius / a.radius).log2();
    if b.spread == 0.0 {
        return f64::INFINITY;
    }
    (a.spread / b.spread).powf(1.0 / doublings)
}

/// Decides rational / not rational from the last three probes.
///
/// `Rational(d)` needs all three windings converged to the same integer `d`
/// within `tol_int` and the spread shrinking by at least `decay_factor` per
/// radius doubling (or sitting at the floating-point floor). A spread that
/// grows by [`GROWTH_FACTOR`] per doubling is `NotRational(Growth)`.
pub fn classify(est: &DivisorEstimate, params: &ClassifyParams) -> Result<Verdict, EstimateError> {
    if est.probes.len() < 3 {
        return Err(EstimateError::InvalidArgument(format!(
            "classification needs at least 3 probes, got {}",
            est.probes.len()
        )));
    }
    let last = &est.probes[est.probes.len() - 3..];
    let d = last[2].winding.nearest_int;
    let floor = SPREAD_NOISE_FLOOR * (1.0 + d.unsigned_abs() as f64);

    let windings_ok =
        last.iter().all(|p| p.winding.converged && p.winding.nearest_int == d && p.winding.residual < params.tol_int);
    let decaying =
        last.windows(2).all(|w| w[1].spread <= floor || decay_per_doubling(&w[0], &w[1]) >= params.decay_factor);
    if windings_ok && decaying {
        return Ok(Verdict::Rational(d));
    }

    let growing =
        last.windows(2).all(|w| w[1].spread > floor && 1.0 / decay_per_doubling(&w[0], &w[1]) >= GROWTH_FACTOR);
    if growing {
        return Ok(Verdict::NotRational(NotRationalReason::Growth));
    }

    let settled = last.iter().all(|p| p.winding.last_delta().is_some_and(|x| x < params.tol_int));
    let integral = last.iter().all(|p| p.winding.nearest_int == d && p.winding.residual < params.tol_int);
    if settled && !integral {
        return Ok(Verdict::NotRational(NotRationalReason::NonIntegerWinding));
    }

    if let Some(trace) = est.residual_trace.as_ref().filter(|t| t.len() >= 3) {
        let tail = &trace[trace.len() - 3..];
        if tail.windows(2).all(|w| w[1].1 >= w[0].1) && tail[2].1 >= params.tol_int {
            return Ok(Verdict::NotRational(NotRationalReason::Residual));
        }
    }

    let spreads: Vec<String> = last.iter().map(|p| format!("{:.3e}", p.spread)).collect();
    let reason = if !windings_ok {
        format!(
            "windings over the last three radii are not all converged to the same integer (nearest {:?})",
            last.iter().map(|p| p.winding.nearest_int).collect::<Vec<_>>()
        )
    } else {
        format!(
            "spread neither decays by {} nor grows by {} per doubling (last spreads {})",
            params.decay_factor,
            GROWTH_FACTOR,
            spreads.join(", ")
        )
    };
    Ok(Verdict::Inconclusive(reason))
}

/// `limit_probe` followed by `classify`, with the verdict filled in.
pub fn estimate_divisor<F: JetEval + ?Sized>(
    f: &F,
    schedule: &RadiusSchedule,
    template: &ContourSpec,
    params: &ClassifyParams,
) -> Result<DivisorEstimate, EstimateError> {
    let mut est = limit_probe(f, schedule, template)?;
    est.verdict = classify(&est, params)?;
    Ok(est)
}

/// Default first radius for an expression: twice the joint Cauchy bound if
/// it has an exact rational form, otherwise [`FALLBACK_R0`]. Also returns the
/// exact form when there is one.
pub fn default_r0(e: &Expression) -> (f64, Option<RationalFunctionExact>) {
    match as_exact_rational(e).ok().and_then(|f| f.rational().cloned()) {
        Some(f) => (2.0 * f.joint_cauchy_bound(), Some(f)),
        None => (FALLBACK_R0, None),
    }
}

/// `max |z·(f'/f − Σ 1/(z−aₖ) + Σ 1/(z−bₖ))|` over `nodes` points of each
/// circle `|z| = r`. The bracket is `g'` in `f = (p/q)·e^g`, so values tend
/// to zero exactly when `f` is rational with the given zeros and poles.
pub fn residual_zg<F: JetEval + ?Sized>(
    f: &F,
    zeros: &[Complex64],
    poles: &[Complex64],
    radii: &[f64],
    nodes: usize,
) -> Result<Vec<(f64, f64)>, EstimateError> {
    let r_min = radii.iter().copied().fold(f64::INFINITY, f64::min);
    if radii.is_empty() || r_min.is_nan() || r_min <= 0.0 {
        return Err(EstimateError::InvalidArgument("radii must be positive and non-empty".into()));
    }
    if nodes == 0 {
        return Err(EstimateError::InvalidArgument("node count must be positive".into()));
    }
    if let Some(a) = zeros.iter().chain(poles).find(|a| a.norm() >= r_min) {
        return Err(EstimateError::InvalidArgument(format!("zero/pole {a} is not inside the smallest radius {r_min}")));
    }
    radii
        .iter()
        .map(|&r| {
            let pts = circle_nodes(&ContourSpec::circle(Complex64::new(0.0, 0.0), r), nodes);
            let mut worst: f64 = 0.0;
            for z in pts {
                let l = f.eval_jet(z)?.log_derivative().ok_or(EvalError::Pole { z })?;
                let p: Complex64 = zeros.iter().map(|a| (z - a).inv()).sum();
                let q: Complex64 = poles.iter().map(|b| (z - b).inv()).sum();
                worst = worst.max((z * (l - p + q)).norm());
            }
            Ok((r, worst))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FtaReport {
    pub count: i64,
    pub degree: usize,
    pub pass: bool,
    pub radius: f64,
    pub winding: WindingResult,
}

/// Counts the zeros of `p` with a winding integral at 1.1 times its Cauchy
/// bound and compares the count with the degree.
pub fn fta_check(p: &Polynomial, template: &ContourSpec) -> Result<FtaReport, EstimateError> {
    let f = RationalFunctionExact::from_polynomial(p).map_err(|_| ExactError::ZeroPolynomial)?;
    let degree = p.degree().ok_or(ExactError::ZeroPolynomial)?;
    let radius = 1.1 * p.cauchy_root_bound()?;
    let expr = expression_from_rational(&f);
    let spec = template.with_radius(radius);
    let (winding, _) =
        winding_with_samples(&expr, &spec).map_err(|source| EstimateError::Contour { radius, source })?;
    let count = winding.nearest_int;
    Ok(FtaReport { count, degree, pass: winding.converged && count == degree as i64, radius, winding })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NecessityRow {
    pub radius: f64,
    /// Largest |exact − jet| for `z·f'/f` over the nodes.
    pub max_path_diff: f64,
    /// Largest |z·f'/f − d| over the nodes (exact path).
    pub max_deviation: f64,
    /// |angle-average of z·f'/f − d| (exact path).
    pub mean_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NecessityReport {
    pub divisor: i64,
    pub rows: Vec<NecessityRow>,
}

impl NecessityReport {
    pub fn max_path_diff(&self) -> f64 {
        self.rows.iter().map(|r| r.max_path_diff).fold(0.0, f64::max)
    }

    /// Both evaluation paths agree to `1e-10` at every node.
    pub fn paths_agree(&self) -> bool {
        self.max_path_diff() < 1e-10
    }

    /// Every row satisfies `max_deviation <= c / radius`.
    pub fn within_decay(&self, c: f64) -> bool {
        self.rows.iter().all(|r| r.max_deviation <= c / r.radius)
    }
}

/// Evaluates `z·f'/f` on circles two ways, through the exact log-derivative
/// at exactly converted nodes and through the jet evaluator, and records how
/// close both are to the divisor.
pub fn verify_necessity(
    f: &RationalFunctionExact,
    radii: &[f64],
    nodes: usize,
) -> Result<NecessityReport, EstimateError> {
    let bound = f.numer().mul(f.denom()).cauchy_root_bound()?;
    if let Some(r) = radii.iter().find(|&&r| r.is_nan() || r <= bound) {
        return Err(EstimateError::InvalidArgument(format!("radius {r} is not beyond the root bound {bound}")));
    }
    if nodes == 0 {
        return Err(EstimateError::InvalidArgument("node count must be positive".into()));
    }
    let d = f.divisor();
    let target = Complex64::new(d as f64, 0.0);
    let ld = f.log_derivative();
    let expr = expression_from_rational(f);
    let rows = radii
        .iter()
        .map(|&r| {
            let pts = circle_nodes(&ContourSpec::circle(Complex64::new(0.0, 0.0), r), nodes);
            let mut exact_vals = Vec::with_capacity(pts.len());
            let mut max_path_diff: f64 = 0.0;
            for z in pts {
                let ze = GaussianRational::from_complex(z).expect("finite node");
                let exact = (&ze * &ld.eval(&ze)?).to_complex();
                let jet = z * expr.eval_jet(z)?.log_derivative().ok_or(EvalError::Pole { z })?;
                max_path_diff = max_path_diff.max((exact - jet).norm());
                exact_vals.push(exact);
            }
            let mean = pairwise_sum(&exact_vals) / exact_vals.len() as f64;
            let max_deviation = exact_vals.iter().map(|v| (v - target).norm()).fold(0.0, f64::max);
            Ok(NecessityRow { radius: r, max_path_diff, max_deviation, mean_error: (mean - target).norm() })
        })
        .collect::<Result<Vec<_>, EstimateError>>()?;
    Ok(NecessityReport { divisor: d, rows })
}

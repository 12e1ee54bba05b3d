//! Argument-principle integrals on circles.
//!
//! The integral `(1/2πi)∮ f'/f dz` over `|z − c| = r` is computed with the
//! trapezoidal rule in the angle, which for `c = 0` is the average of
//! `z·f'(z)/f(z)` over equispaced nodes. Node counts double until two
//! successive values agree to `tol`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::ContourError;
use crate::expr::JetEval;

/// Integrand magnitudes above this mark a node as sitting on (or within
/// roughly `r·1e-12` of) a zero or pole.
pub const NEAR_SINGULAR_LIMIT: f64 = 1e12;

/// Radius nudges tried after a node trips the singularity guard.
pub const PERTURBATION_ATTEMPTS: u32 = 3;

/// Relative radius step per perturbation attempt.
pub const PERTURBATION_STEP: f64 = 0.013;

/// Node batches at least this large are evaluated on the rayon pool.
const PARALLEL_THRESHOLD: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius: f64,
    pub initial_nodes: usize,
    pub max_nodes: usize,
    pub tol: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self { center: Complex64::new(0.0, 0.0), radius: 1.0, initial_nodes: 64, max_nodes: 65536, tol: 1e-9 }
    }
}

impl ContourSpec {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Self { center, radius, ..Self::default() }
    }

    pub fn with_radius(self, radius: f64) -> Self {
        Self { radius, ..self }
    }

    pub fn validate(&self) -> Result<(), ContourError> {
        let bad = |msg: String| Err(ContourError::InvalidSpec(msg));
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return bad(format!("radius must be positive and finite, got {}", self.radius));
        }
        if !self.center.is_finite() {
            return bad("center must be finite".into());
        }
        if self.initial_nodes < 8 || !self.initial_nodes.is_power_of_two() {
            return bad(format!("initial_nodes must be a power of two >= 8, got {}", self.initial_nodes));
        }
        if self.max_nodes < self.initial_nodes || !self.max_nodes.is_power_of_two() {
            return bad(format!("max_nodes must be a power of two >= initial_nodes, got {}", self.max_nodes));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindingResult {
    /// Quadrature value before rounding.
    pub raw: Complex64,
    pub nearest_int: i64,
    /// `|raw − nearest_int|`.
    pub residual: f64,
    pub nodes_used: usize,
    /// Radius actually integrated over, after any perturbation.
    pub radius_used: f64,
    pub converged: bool,
    /// `|I_2n − I_n|` for each doubling, in order.
    pub deltas: Vec<f64>,
}

impl WindingResult {
    pub fn last_delta(&self) -> Option<f64> {
        self.deltas.last().copied()
    }
}

/// Final node set of an adaptive run with the log-derivative at each node.
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    pub nodes: Vec<Complex64>,
    pub log_derivs: Vec<Complex64>,
}

/// `e^{2πi·j/n}`, exact at the four axis points.
fn unit_root(j: usize, n: usize) -> Complex64 {
    if (4 * j).is_multiple_of(n) {
        return match (4 * j / n) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (TAU * j as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

fn node(center: Complex64, radius: f64, j: usize, n: usize) -> Complex64 {
    center + unit_root(j, n) * radius
}

/// `zⱼ = center + radius·e^{2πi·j/n}` for `j = 0..n`.
pub fn circle_nodes(spec: &ContourSpec, n: usize) -> Vec<Complex64> {
    (0..n).map(|j| node(spec.center, spec.radius, j, n)).collect()
}

/// Sum in a fixed balanced binary tree, independent of thread scheduling.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= 8 {
        return values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Log-derivative at one node, or `Err(z)` if the node trips the guard.
fn guarded_log_derivative<F: JetEval + ?Sized>(f: &F, z: Complex64, offset: Complex64) -> Result<Complex64, Complex64> {
    let jet = f.eval_jet(z).map_err(|_| z)?;
    let l = jet.log_derivative().ok_or(z)?;
    if (offset * l).norm() > NEAR_SINGULAR_LIMIT {
        return Err(z);
    }
    Ok(l)
}

fn eval_nodes<F: JetEval + ?Sized>(f: &F, nodes: &[Complex64], center: Complex64) -> Result<Vec<Complex64>, Complex64> {
    let one = |z: &Complex64| guarded_log_derivative(f, *z, *z - center);
    if nodes.len() >= PARALLEL_THRESHOLD {
        nodes.par_iter().map(one).collect()
    } else {
        nodes.iter().map(one).collect()
    }
}

struct Run {
    raw: Complex64,
    deltas: Vec<f64>,
    samples: Samples,
}

/// One doubling sequence at a fixed radius with integrand weight `z^k`.
fn run_at_radius<F: JetEval + ?Sized>(f: &F, spec: &ContourSpec, k: u32) -> Result<Run, Complex64> {
    let c = spec.center;
    let r = spec.radius;
    let weighted = |nodes: &[Complex64], logd: &[Complex64]| -> Complex64 {
        let terms: Vec<Complex64> = nodes
            .iter()
            .zip(logd)
            .map(|(z, l)| {
                let w = (z - c) * l;
                if k == 0 {
                    w
                } else {
                    z.powu(k) * w
                }
            })
            .collect();
        pairwise_sum(&terms) / nodes.len() as f64
    };

    let mut n = spec.initial_nodes;
    let mut nodes: Vec<Complex64> = (0..n).map(|j| node(c, r, j, n)).collect();
    let mut logd = eval_nodes(f, &nodes, c)?;
    let mut value = weighted(&nodes, &logd);
    let mut deltas = Vec::new();

    while n * 2 <= spec.max_nodes {
        let n2 = n * 2;
        let odd: Vec<Complex64> = (0..n).map(|j| node(c, r, 2 * j + 1, n2)).collect();
        let odd_logd = eval_nodes(f, &odd, c)?;
        let mut merged_nodes = Vec::with_capacity(n2);
        let mut merged_logd = Vec::with_capacity(n2);
        for j in 0..n {
            merged_nodes.push(nodes[j]);
            merged_nodes.push(odd[j]);
            merged_logd.push(logd[j]);
            merged_logd.push(odd_logd[j]);
        }
        nodes = merged_nodes;
        logd = merged_logd;
        n = n2;
        let next = weighted(&nodes, &logd);
        let delta = (next - value).norm();
        value = next;
        deltas.push(delta);
        if delta < spec.tol {
            break;
        }
    }
    Ok(Run { raw: value, deltas, samples: Samples { nodes, log_derivs: logd } })
}

/// Runs at the requested radius, then at up to three nudged radii if a node
/// lands on a singularity.
fn run_with_retries<F: JetEval + ?Sized>(f: &F, spec: &ContourSpec, k: u32) -> Result<(Run, f64), ContourError> {
    spec.validate()?;
    let mut last_bad = spec.center;
    for attempt in 0..=PERTURBATION_ATTEMPTS {
        let radius = spec.radius * (1.0 + PERTURBATION_STEP * f64::from(attempt));
        match run_at_radius(f, &spec.with_radius(radius), k) {
            Ok(run) => return Ok((run, radius)),
            Err(z) => last_bad = z,
        }
    }
    Err(ContourError::Singularity { radius: spec.radius, attempts: PERTURBATION_ATTEMPTS, z: last_bad })
}

/// Winding integral together with the node set it converged on.
pub fn winding_with_samples<F: JetEval + ?Sized>(
    f: &F,
    spec: &ContourSpec,
) -> Result<(WindingResult, Samples), ContourError> {
    let (run, radius_used) = run_with_retries(f, spec, 0)?;
    let raw = run.raw;
    let nearest = raw.re.round();
    let residual = (raw - Complex64::new(nearest, 0.0)).norm();
    let settled = run.deltas.last().is_some_and(|d| *d < spec.tol);
    let result = WindingResult {
        raw,
        nearest_int: nearest as i64,
        residual,
        nodes_used: run.samples.nodes.len(),
        radius_used,
        converged: settled && residual <= spec.tol,
        deltas: run.deltas,
    };
    Ok((result, run.samples))
}

/// `(1/2πi)∮ f'/f dz`: zeros minus poles inside the circle.
pub fn winding_integral<F: JetEval + ?Sized>(f: &F, spec: &ContourSpec) -> Result<WindingResult, ContourError> {
    winding_with_samples(f, spec).map(|(w, _)| w)
}

/// `(1/2πi)∮ z^k f'/f dz`, the power sum `Σ aⱼ^k − Σ bⱼ^k` over enclosed
/// zeros `aⱼ` and poles `bⱼ`.
pub fn moment_integral<F: JetEval + ?Sized>(f: &F, spec: &ContourSpec, k: u32) -> Result<Complex64, ContourError> {
    run_with_retries(f, spec, k).map(|(run, _)| run.raw)
}

//! Command-line front end for `ratchar`.
//!
//! [`run`] takes the argument list and two writers and returns the process
//! exit code, so the binary is a thin wrapper and tests can drive it
//! in-process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use ratchar::contour::{winding_integral, ContourSpec};
use ratchar::error::{ContourError, EstimateError, ParseError};
use ratchar::estimate::{default_r0, estimate_divisor, fta_check, ClassifyParams, RadiusSchedule};
use ratchar::expr::{as_exact_rational, parse, ExactForm, Expression};
use ratchar::RationalFunctionExact;

pub mod report;

use report::{
    ClassifyParamsOut, ClassifyResult, DivisorResult, Envelope, FtaResult, NoParams, QuadratureParams, WindingOut,
    WindingParamsOut, WindingReport, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_WRONG_FORM: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ratchar", version, about = "Divisor computation and rationality tests for meromorphic expressions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact divisor deg P - deg Q of a rational expression.
    Divisor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Numerically classify an expression as rational or not.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Winding number of f around a circle (zeros minus poles inside).
    Winding {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Circle radius.
        #[arg(long)]
        radius: f64,
        /// Circle center as "re,im".
        #[arg(long, default_value = "0,0", value_parser = parse_center, allow_hyphen_values = true)]
        center: Complex64,
    },
    /// Count the zeros of a polynomial and compare with its degree.
    Fta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// First probe radius [default: 2 x joint Cauchy bound, or 4].
    #[arg(long, global = true)]
    pub r0: Option<f64>,
    /// Ratio between successive probe radii.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub growth: f64,
    /// Number of probe radii.
    #[arg(long, global = true, default_value_t = 6)]
    pub steps: usize,
    /// Initial quadrature node count (power of two).
    #[arg(long, global = true, default_value_t = 64)]
    pub nodes: usize,
    /// Maximum quadrature node count (power of two).
    #[arg(long, global = true, default_value_t = 65536)]
    pub max_nodes: usize,
    /// Quadrature convergence tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest winding residual accepted as an integer.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tol_int: f64,
    /// Minimum spread decrease per radius step for a rational verdict.
    #[arg(long, global = true, default_value_t = 1.5)]
    pub decay_factor: f64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn parse_center(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Complex64::new(num(re)?, num(im)?))
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl Options {
    fn quadrature(&self) -> QuadratureParams {
        QuadratureParams { nodes: self.nodes, max_nodes: self.max_nodes, tol: self.tol }
    }

    fn contour_template(&self) -> Result<ContourSpec, Failure> {
        let spec = ContourSpec {
            initial_nodes: self.nodes,
            max_nodes: self.max_nodes,
            tol: self.tol,
            ..ContourSpec::default()
        };
        spec.validate().map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
        Ok(spec)
    }

    fn classify_params(&self) -> Result<ClassifyParams, Failure> {
        if !(self.tol_int.is_finite() && self.tol_int > 0.0 && self.tol_int < 0.5) {
            return Err(Failure::new(EXIT_PARSE, format!("tol-int must lie in (0, 0.5), got {}", self.tol_int)));
        }
        if !(self.decay_factor.is_finite() && self.decay_factor >= 1.0) {
            return Err(Failure::new(EXIT_PARSE, format!("decay-factor must be >= 1, got {}", self.decay_factor)));
        }
        Ok(ClassifyParams { tol_int: self.tol_int, decay_factor: self.decay_factor })
    }
}

fn parse_input(text: &str) -> Result<Expression, Failure> {
    parse(text).map_err(|e| Failure::new(EXIT_PARSE, parse_message(text, &e)))
}

fn parse_message(text: &str, e: &ParseError) -> String {
    let caret = " ".repeat(text[..e.offset().min(text.len())].chars().count());
    format!("parse error: {e}\n  {text}\n  {caret}^")
}

fn exact_form(e: &Expression, hint: &str) -> Result<RationalFunctionExact, Failure> {
    match as_exact_rational(e) {
        Ok(ExactForm::Rational(f)) => Ok(f),
        Ok(ExactForm::NotRationalForm) => Err(Failure::new(
            EXIT_WRONG_FORM,
            format!("expression contains exp and has no exact rational form; {hint}"),
        )),
        Err(err) => Err(Failure::new(EXIT_WRONG_FORM, format!("cannot convert to exact rational form: {err}"))),
    }
}

fn estimate_failure(e: EstimateError) -> Failure {
    match e {
        EstimateError::InvalidArgument(_) | EstimateError::Contour { source: ContourError::InvalidSpec(_), .. } => {
            Failure::new(EXIT_PARSE, e.to_string())
        }
        _ => Failure::new(EXIT_NUMERICAL, e.to_string()),
    }
}

fn emit<P: Serialize, R: Serialize>(
    out: &mut dyn Write,
    format: Format,
    command: &'static str,
    input: &str,
    params: P,
    result: R,
    text: String,
) -> std::io::Result<()> {
    match format {
        Format::Text => out.write_all(text.as_bytes()),
        Format::Json => {
            let env = Envelope { schema: SCHEMA_VERSION, command, input: input.to_string(), params, result };
            serde_json::to_writer_pretty(&mut *out, &env).map_err(std::io::Error::from)?;
            writeln!(out)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = &cli.opts;
    let io = |e: std::io::Error| Failure::new(1, format!("write failed: {e}"));
    match &cli.command {
        Command::Divisor { expr } => {
            let e = parse_input(expr)?;
            let f = exact_form(&e, "use `ratchar classify` to test it numerically")?;
            let res = DivisorResult::new(&f);
            let text = res.text(expr);
            emit(out, opts.format, "divisor", expr, NoParams {}, res, text).map_err(io)
        }
        Command::Classify { expr } => {
            let e = parse_input(expr)?;
            let template = opts.contour_template()?;
            let params = opts.classify_params()?;
            let (auto_r0, exact) = default_r0(&e);
            let schedule = RadiusSchedule { r0: opts.r0.unwrap_or(auto_r0), growth: opts.growth, steps: opts.steps };
            schedule.validate().map_err(estimate_failure)?;
            let est = estimate_divisor(&e, &schedule, &template, &params).map_err(estimate_failure)?;
            let res = ClassifyResult::new(&est, exact.as_ref());
            let p = ClassifyParamsOut {
                r0: schedule.r0,
                growth: schedule.growth,
                steps: schedule.steps,
                quadrature: opts.quadrature(),
                tol_int: params.tol_int,
                decay_factor: params.decay_factor,
            };
            let text = res.text(expr, &p);
            emit(out, opts.format, "classify", expr, p, res, text).map_err(io)
        }
        Command::Winding { expr, radius, center } => {
            let e = parse_input(expr)?;
            let spec = ContourSpec { center: *center, radius: *radius, ..opts.contour_template()? };
            spec.validate().map_err(|err| Failure::new(EXIT_PARSE, err.to_string()))?;
            let w = winding_integral(&e, &spec).map_err(|err| Failure::new(EXIT_NUMERICAL, err.to_string()))?;
            let p = WindingParamsOut { center: [center.re, center.im], radius: *radius, quadrature: opts.quadrature() };
            let res = WindingReport { winding: WindingOut::from(&w) };
            let text = res.text(expr, &p);
            emit(out, opts.format, "winding", expr, p, res, text).map_err(io)
        }
        Command::Fta { expr } => {
            let e = parse_input(expr)?;
            let f = exact_form(&e, "fta needs a polynomial")?;
            if !f.is_polynomial() {
                return Err(Failure::new(
                    EXIT_WRONG_FORM,
                    format!("not a polynomial: reduced denominator is {}", f.denom().to_expr_text()),
                ));
            }
            let template = opts.contour_template()?;
            let rep = fta_check(f.numer(), &template).map_err(estimate_failure)?;
            let res = FtaResult::from(&rep);
            let text = res.text(expr);
            emit(out, opts.format, "fta", expr, opts.quadrature(), res, text).map_err(io)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ratchar").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn center_parsing() {
        assert_eq!(parse_center("1.5,-2"), Ok(Complex64::new(1.5, -2.0)));
        assert_eq!(parse_center(" 0 , 0 "), Ok(Complex64::new(0.0, 0.0)));
        assert!(parse_center("1").is_err());
        assert!(parse_center("a,b").is_err());
    }

    #[test]
    fn flags_may_follow_the_subcommand() {
        let (code, out) = run_str(&["classify", "z^2", "--steps", "3", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"steps\": 3"));
    }

    #[test]
    fn parse_errors_point_at_the_offset() {
        let e = parse("z^(3").unwrap_err();
        let msg = parse_message("z^(3", &e);
        assert!(msg.ends_with("\n  z^(3\n    ^"), "{msg}");
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }
}

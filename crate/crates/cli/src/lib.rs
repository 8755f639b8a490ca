//! The `moyal` command-line tool.
//!
//! Exit codes: 0 success or pass, 1 mathematical failure (violation,
//! unclassifiable series, pole, fit residual), 2 usage or parse error.

pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use moyal_core::kernel::{self, center_basis, cocycle_check, factorize, CocycleOutcome, RawKernelExponent};
use moyal_core::lie::{self, HClass, RawLieKernel, Theorem2Outcome};
use moyal_core::spaces::{phase_space, sigma_space, slot_space};
use moyal_core::weyl::{nc_mul, ordered_quantize, weyl_quantize};
use moyal_core::{Coeff, Error, Matrix, PhasePoly, Poly, Space, StarKernel};
use serde_json::{json, Value};

use crate::expr::{parse_at, to_coeff, to_poly, EvalError, ParseError};
use crate::report::{Report, Status};

pub const MAX_DEGREE_VAR: &str = "MOYAL_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "moyal", version, about = "Exact generalized Moyal star products and brackets")]
pub struct Cli {
    /// Number of degrees of freedom: variables q1..qn, p1..pn.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Read the expression inputs from standard input.
    #[arg(long, global = true)]
    pub stdin: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StarKernelArgs {
    /// Built-in kernel: moyal or standard.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Ordering exponent chi over u1..u2n; replaces the built-in chi.
    #[arg(long)]
    pub chi: Option<String>,
    /// Antisymmetric matrix M as rows "a,b;c,d"; defaults to mu*J.
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ExponentArgs {
    /// Kernel exponent b over u1..u2n, v1..v2n.
    #[arg(long)]
    pub b: Option<String>,
    #[command(flatten)]
    pub kernel: StarKernelArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct LieArgs {
    /// Bracket kernel A over u1..u2n, v1..v2n.
    #[arg(long)]
    pub a: Option<String>,
    /// Built-in bracket kernel: moyal, standard or poisson-lie.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Truncation order in x for built-in sinh kernels.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// f ⋆ g.
    Star {
        exprs: Vec<String>,
        #[command(flatten)]
        kernel: StarKernelArgs,
    },
    /// (f ⋆ g − g ⋆ f)/(2 mu).
    Bracket {
        exprs: Vec<String>,
        #[command(flatten)]
        kernel: StarKernelArgs,
    },
    /// Poisson bracket.
    Poisson { exprs: Vec<String> },
    /// Set mu = 0.
    Limit { exprs: Vec<String> },
    /// Ordering change exp(chi(−i∂)) f.
    UMap {
        exprs: Vec<String>,
        #[command(flatten)]
        kernel: StarKernelArgs,
        /// Apply the inverse map.
        #[arg(long)]
        inverse: bool,
    },
    /// Weyl (or chi-ordered) operator of f; with two inputs, also check the
    /// homomorphism property on f ⋆ g.
    Oracle {
        exprs: Vec<String>,
        /// Ordering exponent chi; Weyl ordering when absent.
        #[arg(long)]
        chi: Option<String>,
    },
    /// Decide whether b is a normalized 2-cocycle.
    CheckCocycle {
        #[command(flatten)]
        exponent: ExponentArgs,
    },
    /// Split b into a coboundary and a bilinear antisymmetric form.
    Factorize {
        #[command(flatten)]
        exponent: ExponentArgs,
    },
    /// Center generators of the star product defined by b.
    Center {
        #[command(flatten)]
        exponent: ExponentArgs,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Antisymmetry, Jacobi and constants checks for a bracket kernel.
    CheckLie {
        #[command(flatten)]
        lie: LieArgs,
    },
    /// Linear part omega of a bracket kernel.
    ExtractOmega {
        #[command(flatten)]
        lie: LieArgs,
    },
    /// Classify an odd series a1, a3, a5, ...
    ClassifyH {
        #[arg(long)]
        series: String,
    },
    /// Recover (chi, omega, h) from a bracket kernel.
    Theorem2 {
        #[command(flatten)]
        lie: LieArgs,
        #[arg(long, default_value_t = 6)]
        fit_degree: u32,
    },
    /// Bidifferential coefficient table (n = 1).
    Coeffs {
        #[command(flatten)]
        lie: LieArgs,
        #[arg(long, default_value_t = 2)]
        rmax: u32,
        #[arg(long, default_value_t = 2)]
        smax: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Star { .. } => "star",
            Command::Bracket { .. } => "bracket",
            Command::Poisson { .. } => "poisson",
            Command::Limit { .. } => "limit",
            Command::UMap { .. } => "u-map",
            Command::Oracle { .. } => "oracle",
            Command::CheckCocycle { .. } => "check-cocycle",
            Command::Factorize { .. } => "factorize",
            Command::Center { .. } => "center",
            Command::CheckLie { .. } => "check-lie",
            Command::ExtractOmega { .. } => "extract-omega",
            Command::ClassifyH { .. } => "classify-h",
            Command::Theorem2 { .. } => "theorem2",
            Command::Coeffs { .. } => "coeffs",
        }
    }
}

/// A failure that ends the command early.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(ParseError),
    Math(String, Option<String>),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let root = e.root();
        let witness = match root {
            Error::Pole(t)
            | Error::CocycleViolation(t)
            | Error::Unnormalized(t)
            | Error::NotBilinear(t)
            | Error::NotSymmetric(t)
            | Error::NotCoboundary(t)
            | Error::ConstantsNotAnnihilated(t)
            | Error::Nonlinear(t) => Some(t.to_string()),
            Error::FitResidual { witness, .. } => Some(witness.to_string()),
            _ => None,
        };
        match witness {
            Some(w) => Failure::Math(e.to_string(), Some(w)),
            None => Failure::Usage(match root {
                Error::DegreeBound { .. } => format!("{e} (raise {MAX_DEGREE_VAR} to allow it)"),
                _ => e.to_string(),
            }),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Core(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

/// Parsing context: dimension, degree guard and the stdin text if requested.
struct Ctx {
    n: usize,
    max_degree: u32,
    stdin: Option<String>,
    command: &'static str,
}

impl Ctx {
    fn phase(&self) -> Arc<Space> {
        phase_space(self.n, self.max_degree)
    }

    fn expr_on(&self, src: &str, first_line: usize, space: &Arc<Space>) -> Result<Poly, Failure> {
        let names = space.names().to_vec();
        let e = parse_at(src, first_line, Some(&names))?;
        Ok(to_poly(&e, space)?)
    }

    /// Positional phase-space inputs: from argv, or one per non-empty stdin line.
    fn phase_inputs(&self, exprs: &[String], count: std::ops::RangeInclusive<usize>) -> Result<Vec<PhasePoly>, Failure> {
        let space = self.phase();
        let sources: Vec<(String, usize)> = match &self.stdin {
            Some(text) => text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(k, l)| (l.to_string(), k + 1))
                .collect(),
            None => exprs.iter().map(|e| (e.clone(), 1)).collect(),
        };
        if !count.contains(&sources.len()) {
            return Err(Failure::Usage(format!(
                "{} expects {} expression(s), got {}",
                self.command,
                if count.start() == count.end() {
                    count.start().to_string()
                } else {
                    format!("{} to {}", count.start(), count.end())
                },
                sources.len()
            )));
        }
        sources
            .iter()
            .map(|(src, line)| Ok(PhasePoly::new(self.n, self.expr_on(src, *line, &space)?)?))
            .collect()
    }

    /// A named expression option, or the whole of stdin.
    fn named_input(&self, value: &Option<String>) -> Option<String> {
        match (&self.stdin, value) {
            (Some(text), None) => Some(text.clone()),
            (_, v) => v.clone(),
        }
    }

    fn sigma_poly(&self, src: &str) -> Result<Poly, Failure> {
        self.expr_on(src, 1, &sigma_space(self.n, self.max_degree))
    }

    fn two_slot_poly(&self, src: &str) -> Result<Poly, Failure> {
        self.expr_on(src, 1, &slot_space(self.n, 2, self.max_degree))
    }

    fn star_kernel(&self, args: &StarKernelArgs) -> Result<StarKernel, Failure> {
        let base = match args.kernel.as_deref() {
            None | Some("moyal") => StarKernel::moyal(self.n),
            Some("standard") => StarKernel::standard(self.n),
            Some(other) => {
                return Err(Failure::Usage(format!(
                    "unknown star kernel '{other}' (expected moyal or standard)"
                )))
            }
        };
        let chi = match &args.chi {
            Some(src) => self.sigma_poly(src)?,
            None => base.chi().clone(),
        };
        let m = match &args.matrix {
            Some(src) => parse_matrix(src, 2 * self.n)?,
            None => base.matrix().clone(),
        };
        Ok(StarKernel::new(chi, m)?)
    }

    fn exponent(&self, args: &ExponentArgs) -> Result<RawKernelExponent, Failure> {
        match self.named_input(&args.b) {
            Some(src) => Ok(RawKernelExponent::new(self.two_slot_poly(&src)?)?),
            None => Ok(RawKernelExponent::from_star_kernel(&self.star_kernel(&args.kernel)?)),
        }
    }

    fn lie_kernel(&self, args: &LieArgs) -> Result<RawLieKernel, Failure> {
        if let Some(src) = self.named_input(&args.a) {
            return Ok(RawLieKernel::new(self.two_slot_poly(&src)?)?);
        }
        match args.kernel.as_deref() {
            None | Some("moyal") => Ok(RawLieKernel::moyal(self.n, args.order)),
            Some("poisson-lie") => Ok(RawLieKernel::poisson(self.n)),
            Some("standard") => Ok(RawLieKernel::from_star_kernel(&StarKernel::standard(self.n), 2 * args.order)?),
            Some(other) => Err(Failure::Usage(format!(
                "unknown bracket kernel '{other}' (expected moyal, standard or poisson-lie)"
            ))),
        }
    }
}

fn parse_coeff(src: &str) -> Result<Coeff, Failure> {
    let e = parse_at(src.trim(), 1, Some(&[]))?;
    Ok(to_coeff(&e)?)
}

/// Rows separated by `;`, entries by `,`.
fn parse_matrix(src: &str, dim: usize) -> Result<Matrix, Failure> {
    let rows: Vec<Vec<Coeff>> = src
        .split(';')
        .map(|row| row.split(',').map(parse_coeff).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Failure::Usage(format!("matrix must be {dim}x{dim}")));
    }
    Ok(Matrix::from_rows(rows))
}

fn max_degree_from_env() -> Result<u32, Failure> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_DEGREE_VAR} must be a nonnegative integer, got '{v}'"))),
        Err(_) => Ok(moyal_core::algebra::DEFAULT_MAX_DEGREE),
    }
}

fn single(command: &str, value: PhasePoly) -> Outcome {
    let text = value.to_string();
    Ok(Report::new(command, Status::Ok, report::poly(value.poly()), text))
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Outcome {
    let name = cli.command.name();
    match &cli.command {
        Command::Star { exprs, kernel } => {
            let k = ctx.star_kernel(kernel)?;
            let v = ctx.phase_inputs(exprs, 2..=2)?;
            single(name, moyal_core::star(&v[0], &v[1], &k)?)
        }
        Command::Bracket { exprs, kernel } => {
            let k = ctx.star_kernel(kernel)?;
            let v = ctx.phase_inputs(exprs, 2..=2)?;
            single(name, moyal_core::bracket(&v[0], &v[1], &k)?)
        }
        Command::Poisson { exprs } => {
            let v = ctx.phase_inputs(exprs, 2..=2)?;
            single(name, moyal_core::poisson(&v[0], &v[1])?)
        }
        Command::Limit { exprs } => {
            let v = ctx.phase_inputs(exprs, 1..=1)?;
            single(name, moyal_core::classical_limit(&v[0])?)
        }
        Command::UMap { exprs, kernel, inverse } => {
            let k = ctx.star_kernel(kernel)?;
            let v = ctx.phase_inputs(exprs, 1..=1)?;
            let chi = if *inverse { k.chi().scale(&Coeff::from_int(-1)) } else { k.chi().clone() };
            single(name, moyal_core::u_map(&v[0], &chi)?)
        }
        Command::Oracle { exprs, chi } => oracle(ctx, name, exprs, chi),
        Command::CheckCocycle { exponent } => {
            let b = ctx.exponent(exponent)?;
            Ok(match cocycle_check(&b) {
                CocycleOutcome::Pass => Report::new(name, Status::Pass, json!({ "cocycle": true }), "pass: b is a normalized 2-cocycle"),
                CocycleOutcome::Violation(v) => {
                    let kind = match v.kind {
                        kernel::ViolationKind::Normalization => "normalization",
                        kernel::ViolationKind::Cocycle => "cocycle",
                    };
                    let mut r = Report::new(
                        name,
                        Status::Fail,
                        json!({ "cocycle": false, "violation": kind }),
                        format!("fail: {kind} identity violated"),
                    )
                    .with_witness(&v.witness);
                    report::defects_by_mu_order(kind, &v.defect, &mut r.defects);
                    r
                }
            })
        }
        Command::Factorize { exponent } => {
            let f = factorize(&ctx.exponent(exponent)?)?;
            let kernel: Vec<Value> = f.kernel_basis.iter().map(|k| report::vector(k)).collect();
            let result = json!({
                "chi": report::poly(&f.chi),
                "matrix": report::matrix(&f.matrix),
                "rank": f.rank,
                "pairings": report::vector(&f.pairings),
                "uniform_pairing": f.uniform_pairing,
                "darboux_basis": report::matrix(&f.darboux_basis),
                "kernel": kernel,
            });
            let mut text = format!("chi = {}\nM = {}\nrank = {}", f.chi, f.matrix, f.rank);
            text.push_str(&format!("\npairings = {}", report::vector_text(&f.pairings)));
            text.push_str(&format!("\nuniform pairing = {}", f.uniform_pairing));
            for k in &f.kernel_basis {
                text.push_str(&format!("\nkernel vector {}", report::vector_text(k)));
            }
            Ok(Report::new(name, Status::Ok, result, text))
        }
        Command::Center { exponent, max_degree } => {
            let gens = center_basis(&ctx.exponent(exponent)?, *max_degree)?;
            let list: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            Ok(Report::new(name, Status::Ok, json!({ "generators": list }), list.join("\n")))
        }
        Command::CheckLie { lie } => {
            let a = ctx.lie_kernel(lie)?;
            let r = lie::lie_axiom_check(&a);
            let status = if r.passed() { Status::Pass } else { Status::Fail };
            let result = json!({
                "antisymmetric": r.antisymmetry.is_zero(),
                "jacobi": r.jacobi.is_zero(),
                "constants_annihilate": r.constants_annihilate(),
            });
            let text = format!(
                "{}: antisymmetry {}, jacobi {}, constants {}",
                status.as_str(),
                if r.antisymmetry.is_zero() { "holds" } else { "fails" },
                if r.jacobi.is_zero() { "holds" } else { "fails" },
                if r.constants_annihilate() { "annihilate" } else { "do not annihilate" },
            );
            let mut rep = Report::new(name, status, result, text);
            match r.violation() {
                Some(lie::LieViolation::Antisymmetry(t)) | Some(lie::LieViolation::Jacobi(t)) => rep.witness = Some(t.to_string()),
                None => {}
            }
            report::defects_by_mu_order("antisymmetry", &r.antisymmetry, &mut rep.defects);
            report::defects_by_mu_order("jacobi", &r.jacobi, &mut rep.defects);
            Ok(rep)
        }
        Command::ExtractOmega { lie } => {
            let o = lie::extract_omega(&ctx.lie_kernel(lie)?)?;
            let kernel: Vec<Value> = o.kernel().iter().map(|k| report::vector(k)).collect();
            let mut text = format!("omega = {}\nrank = {}", o.omega, o.rank());
            for k in o.kernel() {
                text.push_str(&format!("\nkernel vector {}", report::vector_text(k)));
            }
            let result = json!({
                "omega": report::matrix(&o.omega),
                "rank": o.rank(),
                "kernel": kernel,
            });
            Ok(Report::new(name, Status::Ok, result, text))
        }
        Command::ClassifyH { series } => {
            let coeffs: Vec<Coeff> = series.split(',').map(parse_coeff).collect::<Result<_, _>>()?;
            let class = lie::classify_h(&coeffs)?;
            Ok(class_report(name, &class))
        }
        Command::Theorem2 { lie, fit_degree } => {
            let a = ctx.lie_kernel(lie)?;
            let r = lie::theorem2_pipeline(&a, *fit_degree)?;
            let mut text = format!("omega = {}\nrank = {}", r.omega.omega, r.omega.rank());
            let mut result = json!({
                "fit_degree": r.fit_degree,
                "omega": report::matrix(&r.omega.omega),
                "rank": r.omega.rank(),
            });
            let mut status = Status::Ok;
            match &r.outcome {
                Theorem2Outcome::Classified { chi, h_series, class } => {
                    text.push_str(&format!(
                        "\nchi = {chi}\nh series = {}\nclass = {class} (up to degree {})",
                        report::vector_text(h_series),
                        r.fit_degree
                    ));
                    if let Some(target) = r.isomorphic_to() {
                        text.push_str(&format!("\nisomorphic to the {target} bracket via Omega = exp(chi)"));
                    }
                    if matches!(class, HClass::Neither { .. }) {
                        status = Status::Fail;
                    }
                    result["chi"] = report::poly(chi);
                    result["h_series"] = report::vector(h_series);
                    result["class"] = class_json(class);
                    result["isomorphic_to"] = json!(r.isomorphic_to());
                }
                Theorem2Outcome::Degenerate { kernel, center, verified } => {
                    for k in kernel {
                        text.push_str(&format!("\nkernel vector {}", report::vector_text(k)));
                    }
                    let gens: Vec<String> = center.iter().map(|g| g.to_string()).collect();
                    text.push_str(&format!("\ncenter generators (verified = {verified}): {}", gens.join(", ")));
                    if !verified {
                        status = Status::Fail;
                    }
                    result["kernel"] = Value::Array(kernel.iter().map(|k| report::vector(k)).collect());
                    result["center"] = json!(gens);
                    result["center_verified"] = json!(verified);
                }
            }
            Ok(Report::new(name, status, result, text))
        }
        Command::Coeffs { lie, rmax, smax } => {
            let t = lie::bidiff_coefficients(&ctx.lie_kernel(lie)?, *rmax, *smax)?;
            let mut entries = serde_json::Map::new();
            let mut lines = Vec::new();
            for (&(r, j, s, k), c) in &t.entries {
                let key = format!("b[{r}{j},{s}{k}]");
                lines.push(format!("r={r} j={j} s={s} k={k}: {c}"));
                entries.insert(key, report::coeff(c));
            }
            let result = json!({ "rmax": t.rmax, "smax": t.smax, "entries": entries });
            Ok(Report::new(name, Status::Ok, result, lines.join("\n")))
        }
    }
}

fn oracle(ctx: &Ctx, name: &str, exprs: &[String], chi: &Option<String>) -> Outcome {
    let v = ctx.phase_inputs(exprs, 1..=2)?;
    let chi_poly = match chi {
        Some(src) => ctx.sigma_poly(src)?,
        None => Poly::zero(&sigma_space(ctx.n, ctx.max_degree)),
    };
    let quantize = |f: &PhasePoly| -> Result<_, Error> {
        if chi.is_some() {
            ordered_quantize(f, &chi_poly)
        } else {
            weyl_quantize(f)
        }
    };
    if v.len() == 1 {
        let op = quantize(&v[0])?;
        return Ok(Report::new(name, Status::Ok, report::poly(op.words()), op.to_string()));
    }
    let k = StarKernel::new(chi_poly.clone(), Matrix::canonical_symplectic(ctx.n).scale(&Coeff::mu()))?;
    let product = quantize(&moyal_core::star(&v[0], &v[1], &k)?)?;
    let composed = nc_mul(&quantize(&v[0])?, &quantize(&v[1])?)?;
    let agree = product == composed;
    let status = if agree { Status::Pass } else { Status::Fail };
    let result = json!({
        "product": report::poly(product.words()),
        "composed": report::poly(composed.words()),
        "homomorphic": agree,
    });
    let text = format!(
        "{}: W(f*g) = {}{}",
        status.as_str(),
        product,
        if agree { String::new() } else { format!("\nW(f) W(g) = {composed}") }
    );
    Ok(Report::new(name, status, result, text))
}

fn class_json(c: &HClass) -> Value {
    match c {
        HClass::Zero => json!({ "tag": "zero" }),
        HClass::Linear { c } => json!({ "tag": "linear", "c": report::coeff(c) }),
        HClass::Sinh { mu_sq, c_mu } => json!({ "tag": "sinh", "mu_sq": report::coeff(mu_sq), "c_mu": report::coeff(c_mu) }),
        HClass::Neither { index, expected, found } => json!({
            "tag": "neither",
            "index": index,
            "expected": report::coeff(expected),
            "found": report::coeff(found),
        }),
    }
}

fn class_report(name: &str, c: &HClass) -> Report {
    let status = if matches!(c, HClass::Neither { .. }) { Status::Fail } else { Status::Ok };
    let mut r = Report::new(name, status, class_json(c), c.to_string());
    if let HClass::Neither { index, .. } = c {
        r.witness = Some(format!("a{index}"));
    }
    r
}

fn failure_report(command: &str, f: Failure) -> Report {
    match f {
        Failure::Usage(msg) => Report::new(command, Status::Error, json!({ "error": msg }), format!("error: {msg}")),
        Failure::Parse(e) => Report::new(
            command,
            Status::Error,
            json!({ "error": e.message, "line": e.line, "column": e.column, "token": e.token }),
            format!("parse error: {e}"),
        ),
        Failure::Math(msg, witness) => {
            let mut r = Report::new(command, Status::Fail, json!({ "error": msg }), format!("fail: {msg}"));
            r.witness = witness;
            r
        }
    }
}

/// Run with explicit streams; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let name = cli.command.name();
    let report = prepare(&cli, stdin).and_then(|ctx| dispatch(&cli, &ctx)).unwrap_or_else(|f| failure_report(name, f));
    let text = if cli.json { report.to_json() } else { report.to_text() };
    let sink: &mut dyn Write = if report.status == Status::Error && !cli.json { err } else { out };
    let _ = writeln!(sink, "{text}");
    report.status.exit_code()
}

fn prepare(cli: &Cli, stdin: &mut dyn Read) -> Result<Ctx, Failure> {
    if cli.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let stdin_text = if cli.stdin {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        Some(s)
    } else {
        None
    };
    Ok(Ctx {
        n: cli.n,
        max_degree: max_degree_from_env()?,
        stdin: stdin_text,
        command: cli.command.name(),
    })
}

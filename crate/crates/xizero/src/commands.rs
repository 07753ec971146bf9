//! Argument parsing, subcommand dispatch and exit codes.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use xizero_core::ftzeros::{
    ambient_report, exceptional_test, half_plane_count, phi_alpha_eval, Density, Quadrature, Rectangle,
    SampledDensity, StepFunction,
};
use xizero_core::lp::{
    distinct_real_roots, has_only_real_zeros, jensen_disks, multiplier_sequence_test, nonreal_count,
    real_root_count, TaylorSeq,
};
use xizero_core::moments::{borchardt_hermite, hankel_positive, moment_table, power_sums, total_positivity_scan, CoeffSequence};
use xizero_core::numerics::Estimate;
use xizero_core::phi::{phi_eval, phi_ledger_report, CheckStatus};
use xizero_core::real::parse_rational;
use xizero_core::xi::{positive_zeros, sum_rule_report, HeatFlow, XiEvalRequest, XiEvaluator, XiMethod};
use xizero_core::{Complex, Error, Mp, PrecisionContext, Rational, Real, RealPolynomial};

use crate::config::{Format, Overrides, RunConfig};
use crate::output::{self, Record};
use crate::plot::emit_plot;
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "xizero", version, about = "Certified numerics for the Xi function, Laguerre-Polya tests and Fourier transform zeros")]
pub struct Cli {
    /// Working precision in bits (default 128, or XIZERO_BITS).
    #[arg(long, global = true)]
    pub bits: Option<usize>,
    /// Target relative error (default 1e-30)
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Target absolute error (default 1e-24)
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Precision doublings allowed before giving up (default 3)
    #[arg(long, global = true)]
    pub max_escalations: Option<u32>,
    /// Output format: json (one record per line) or csv.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write an SVG plot of the sampled curve here.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    /// Flat key=value configuration file; overrides the environment.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GridArg {
    /// Grid `start:stop:step` with exact decimal or n/d entries.
    #[arg(long, default_value = "0:2:0.25", allow_hyphen_values = true)]
    pub grid: String,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArg {
    /// Coefficients c0,c1,... in ascending order.
    #[arg(long, conflicts_with = "fixture", allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// File of ascending coefficients separated by commas or whitespace.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DensityArg {
    /// Step-function fixture file.
    #[arg(long, conflicts_with = "density")]
    pub fixture: Option<PathBuf>,
    /// Registered sampled density (linear, exp, quadratic, cubic, sqrt, hat).
    #[arg(long)]
    pub density: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Φ or its derivatives on a grid.
    Phi {
        #[command(flatten)]
        grid: GridArg,
        #[arg(long, default_value_t = 0)]
        order: u8,
    },
    /// Inequality ledger for Φ on a grid.
    PhiLedger {
        #[command(flatten)]
        grid: GridArg,
    },
    /// Moments b_0..b_kmax and the combination b1^2 - b0*b2/3.
    Moments {
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Turán differences and D(n, 2) for the Taylor coefficients of Ŝ.
    Turan {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Minors D(n, r) of the coefficient sequence for all n <= N, r <= R.
    Dnr {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Leading Hankel minors of the inverse power sums of the zeros of Ŝ.
    Hankel {
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Positive real zeros of Ŝ up to the window.
    XiZeros {
        #[arg(long, default_value_t = 65.0)]
        window: f64,
    },
    /// Sum rule Σ x_n^{-2} against b1/(2 b0).
    SumRule {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Real zeros of the heat-evolved function Ξ_λ.
    Heat {
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = 40.0)]
        window: f64,
    },
    /// Roots, Jensen disks and critical points of a real polynomial.
    Jensen {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Jensen-polynomial multiplier sequence test.
    MsTest {
        /// γ_0,γ_1,... as integers, decimals or n/d.
        #[arg(long, conflicts_with = "fixture", allow_hyphen_values = true)]
        sequence: Option<String>,
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Real-zero count by Sturm sequences and Borchardt–Hermite.
    LpCheck {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Ambient-interval zero structure of W_{A,α}.
    FtZeros {
        #[command(flatten)]
        density: DensityArg,
        /// α in [0, π): decimal or a multiple of pi such as pi/2.
        #[arg(long, default_value = "pi/2")]
        alpha: String,
        #[arg(long, default_value_t = 8)]
        k: usize,
    },
    /// Samples of W_{A,α} on [0, window].
    WReport {
        #[command(flatten)]
        density: DensityArg,
        #[arg(long, default_value = "pi/2")]
        alpha: String,
        #[arg(long, default_value_t = 20.0)]
        window: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Argument-principle zero count of f_A in a lower half-plane rectangle.
    HalfPlane {
        #[command(flatten)]
        density: DensityArg,
        /// x_lo,x_hi,y_lo,y_hi
        #[arg(long, default_value = "-20,20,-3,-0.1", allow_hyphen_values = true)]
        rect: String,
    },
    /// Φ_α(x) = ∫ e^{-t^α} cos(xt) dt on a grid, with x^{α+1}Φ_α(x).
    PhiAlpha {
        #[arg(long, default_value = "3")]
        alpha: String,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Run the acceptance criteria.
    Selftest,
}

/// Why a command stopped; each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
    Violation(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
            Failure::Violation(_) => EXIT_VIOLATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let msg = e.to_string();
        if e.is_violation() {
            return Failure::Violation(msg);
        }
        match e {
            Error::TailNotDecaying { .. }
            | Error::NoConvergence { .. }
            | Error::SuspectedTangency { .. }
            | Error::IllConditioned { .. }
            | Error::RootFindingNoConvergence { .. }
            | Error::BoundaryZeroSuspected { .. }
            | Error::TailBoundMissing => Failure::Numeric(msg),
            _ => Failure::Usage(msg),
        }
    }
}

/// Records plus optional plot samples and a violation found along the way.
#[derive(Default)]
pub struct Report {
    pub records: Vec<Record>,
    pub samples: Vec<(f64, f64)>,
    pub violation: Option<String>,
}

impl Report {
    fn records(records: Vec<Record>) -> Report {
        Report { records, ..Report::default() }
    }
}

type Outcome = Result<Report, Failure>;

/// Runs one invocation. `env_bits` is the value of `XIZERO_BITS`, if set.
pub fn dispatch<I, S>(argv: I, env_bits: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match resolve_config(&cli, env_bits) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    match run(&cli.command, &cfg) {
        Ok(report) => {
            if let Err(e) = output::write(&report.records, cfg.output_format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if let Some(path) = &cfg.plot {
                if report.samples.is_empty() {
                    let _ = writeln!(err, "note: this command produces no plot samples");
                } else if let Err(e) = emit_plot(&report.samples, path) {
                    let _ = writeln!(err, "error: plot {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            match report.violation {
                Some(v) => {
                    let _ = writeln!(err, "violation: {v}");
                    EXIT_VIOLATION
                }
                None => EXIT_OK,
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn resolve_config(cli: &Cli, env_bits: Option<&str>) -> Result<RunConfig, String> {
    let env = Overrides::from_env(env_bits)?;
    let file = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("config {}: {e}", p.display()))?;
            Overrides::parse_file(&text)?
        }
        None => Overrides::default(),
    };
    let flags = Overrides {
        bits: cli.bits,
        rel_tol: cli.rel_tol,
        abs_tol: cli.abs_tol,
        max_escalations: cli.max_escalations,
        output_format: cli.format,
        plot: cli.plot.clone(),
    };
    RunConfig::resolve(&env, &file, &flags)
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Outcome {
    let ctx = cfg.context()?;
    match cmd {
        Command::Phi { grid, order } => phi(&parse_grid(&grid.grid, ctx.bits)?, *order, &ctx),
        Command::PhiLedger { grid } => phi_ledger(&parse_grid(&grid.grid, ctx.bits)?, &ctx),
        Command::Moments { kmax } => moments(*kmax, &ctx),
        Command::Turan { n } => turan(*n, &ctx),
        Command::Dnr { n, r } => dnr_scan(*n, *r, &ctx),
        Command::Hankel { r } => hankel(*r, &ctx),
        Command::XiZeros { window } => xi_zeros(*window, &ctx),
        Command::SumRule { n } => sum_rule(*n, &ctx),
        Command::Heat { lambda, window } => heat(*lambda, *window, &ctx),
        Command::Jensen { poly } => jensen(&read_poly(poly)?, &ctx),
        Command::MsTest { sequence, fixture, n } => ms_test(sequence.as_deref(), fixture.as_ref(), *n),
        Command::LpCheck { poly } => lp_check(&read_poly(poly)?),
        Command::FtZeros { density, alpha, k } => {
            let phi = read_density(density)?;
            ft_zeros(&phi, &parse_angle(alpha, ctx.bits)?, *k, &ctx)
        }
        Command::WReport { density, alpha, window, points } => {
            let phi = read_density(density)?;
            w_report(&phi, &parse_angle(alpha, ctx.bits)?, *window, *points, &ctx)
        }
        Command::HalfPlane { density, rect } => half_plane(&read_density(density)?, &parse_rect(rect)?, &ctx),
        Command::PhiAlpha { alpha, grid } => {
            phi_alpha(&parse_angle(alpha, ctx.bits)?, &parse_grid(&grid.grid, ctx.bits)?, &ctx)
        }
        Command::Selftest => Ok(selftest_report()),
    }
}

// --- input parsing ----------------------------------------------------------

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s.trim()).ok_or_else(|| usage(format!("not a number: `{s}`")))
}

/// Exact grid `start:stop:step`, inclusive of `stop` when it lands on a step.
pub fn parse_grid(spec: &str, bits: usize) -> Result<Vec<Real>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(usage(format!("grid `{spec}` is not start:stop:step")));
    };
    let (a, b, h) = (rational_arg(a)?, rational_arg(b)?, rational_arg(h)?);
    if h <= Rational::from_integer(0.into()) || b < a {
        return Err(usage(format!("grid `{spec}` needs step > 0 and stop >= start")));
    }
    let mut out = Vec::new();
    let mut t = a;
    while t <= b {
        if out.len() >= 100_000 {
            return Err(usage("grid has more than 100000 points"));
        }
        out.push(Real::from_rational(&t, bits));
        t += &h;
    }
    Ok(out)
}

/// A decimal, or a rational multiple of pi written `pi`, `pi/2`, `3pi/4`, `3*pi/4`.
pub fn parse_angle(s: &str, bits: usize) -> Result<Real, Failure> {
    let s = s.trim();
    let Some(i) = s.find("pi") else {
        return Ok(Real::from_rational(&rational_arg(s)?, bits));
    };
    let (pre, post) = (s[..i].trim_end_matches('*').trim(), s[i + 2..].trim());
    let num = if pre.is_empty() { Rational::from_integer(1.into()) } else { rational_arg(pre)? };
    let den = match post.strip_prefix('/') {
        Some(d) => rational_arg(d)?,
        None if post.is_empty() => Rational::from_integer(1.into()),
        None => return Err(usage(format!("cannot read angle `{s}`"))),
    };
    if den == Rational::from_integer(0.into()) {
        return Err(usage("zero denominator in angle"));
    }
    let mut mp = Mp::new(bits);
    Ok(&mp.pi() * &Real::from_rational(&(num / den), bits))
}

fn parse_rect(s: &str) -> Result<Rectangle, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| usage(format!("bad rectangle entry `{x}`"))))
        .collect::<Result<_, _>>()?;
    let [x_lo, x_hi, y_lo, y_hi] = v.as_slice() else {
        return Err(usage("rectangle needs x_lo,x_hi,y_lo,y_hi"));
    };
    Ok(Rectangle { x_lo: *x_lo, x_hi: *x_hi, y_lo: *y_lo, y_hi: *y_hi })
}

/// Numbers separated by commas or whitespace, `#` starting a comment.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, Failure> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(rational_arg)
        .collect()
}

fn read_file(p: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn read_poly(arg: &PolyArg) -> Result<RealPolynomial, Failure> {
    let text = match (&arg.poly, &arg.fixture) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => read_file(p)?,
        (None, None) => return Err(usage("give --poly or --fixture")),
    };
    let p = RealPolynomial::new(parse_list(&text)?);
    if p.degree().unwrap_or(0) == 0 {
        return Err(usage("polynomial must have degree >= 1"));
    }
    Ok(p)
}

fn read_density(arg: &DensityArg) -> Result<Density, Failure> {
    match (&arg.fixture, &arg.density) {
        (Some(p), _) => Ok(StepFunction::parse(&read_file(p)?)?.into()),
        (None, Some(name)) => SampledDensity::registered(name).map(Density::from).ok_or_else(|| {
            usage(format!("unknown density `{name}`; known: {}", SampledDensity::registered_names().join(", ")))
        }),
        (None, None) => Err(usage("give --fixture or --density")),
    }
}

// --- commands ---------------------------------------------------------------

fn phi(grid: &[Real], order: u8, ctx: &PrecisionContext) -> Outcome {
    if order > 2 {
        return Err(usage("--order must be 0, 1 or 2"));
    }
    let evals: Vec<_> = grid.par_iter().map(|t| phi_eval(t, order, ctx)).collect();
    let mut rep = Report::default();
    for (t, e) in grid.iter().zip(evals) {
        let e = e?;
        rep.samples.push((t.to_f64(), e.value.to_f64()));
        rep.records.push(
            Record::new()
                .exact("t", decimal(t))
                .exact("order", order)
                .real("phi", &e.value, &e.error_bound)
                .exact("terms", e.terms_used),
        );
    }
    Ok(rep)
}

/// Exact short decimal of a grid point.
fn decimal(x: &Real) -> String {
    Mp::new(x.prec()).to_sci(x, 17)
}

fn phi_ledger(grid: &[Real], ctx: &PrecisionContext) -> Outcome {
    let r = phi_ledger_report(grid, ctx)?;
    let mut rep = Report::default();
    for p in &r.points {
        for c in &p.checks {
            // The margin is certified when it clears its own rounding.
            let err = Estimate::rounded(c.margin.clone()).error.max(&Estimate::rounded(c.lhs.clone()).error);
            rep.records.push(
                Record::new()
                    .exact("t", decimal(&p.t))
                    .label("check", c.name)
                    .label("relation", c.relation.symbol())
                    .real("lhs", &c.lhs, &Estimate::rounded(c.lhs.clone()).error)
                    .real("rhs", &c.rhs, &Estimate::rounded(c.rhs.clone()).error)
                    .real("margin", &c.margin, &err)
                    .label(
                        "status",
                        match c.status {
                            CheckStatus::Pass => "pass",
                            CheckStatus::Fail => "fail",
                            CheckStatus::Skipped => "skipped",
                        },
                    ),
            );
        }
    }
    rep.violation = r.first_violation().map(|e| e.to_string());
    Ok(rep)
}

fn moments(kmax: usize, ctx: &PrecisionContext) -> Outcome {
    let t = moment_table(kmax, ctx)?;
    let mut recs: Vec<Record> =
        t.entries().iter().enumerate().map(|(k, b)| Record::new().exact("k", k).estimate("b_k", b)).collect();
    if kmax >= 2 {
        recs.push(Record::new().label("k", "combo").estimate("b_k", &t.hankel_combo()?));
    }
    Ok(Report::records(recs))
}

fn turan(n: usize, ctx: &PrecisionContext) -> Outcome {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let t = moment_table(n + 1, ctx)?;
    let seq = t.c_sequence();
    let mut rep = Report::default();
    for m in 1..=n {
        let d = t.turan_delta(m)?;
        let dn2 = xizero_core::moments::dnr(&seq, m, 2, ctx)?;
        for (name, s) in [("delta", d.delta.sign()), ("strict", d.strict.sign()), ("d_n2", dn2.sign())] {
            if s == Some(-1) && rep.violation.is_none() {
                rep.violation = Some(format!("{name} negative at n = {m}"));
            }
        }
        rep.records.push(
            Record::new()
                .exact("n", m)
                .estimate("delta", &d.delta)
                .estimate("strict", &d.strict)
                .real("d_n2", &dn2.value, &dn2.error),
        );
    }
    Ok(rep)
}

fn dnr_scan(n: usize, r: usize, ctx: &PrecisionContext) -> Outcome {
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    let t = moment_table(n + r, ctx)?;
    let scan = total_positivity_scan(&t.c_sequence(), n, r, ctx)?;
    let recs = scan
        .minors
        .iter()
        .map(|m| {
            Record::new()
                .exact("n", m.n)
                .exact("r", m.r)
                .real("det", &m.det.value, &m.det.error)
                .label("certified_positive", m.det.is_positive())
        })
        .collect();
    let mut rep = Report::records(recs);
    // D(n, 1) = C_n and D(n, 2) are proved positive; larger r are open.
    if let Some(&(n, r)) = scan.nonpositive.iter().find(|&&(_, r)| r <= 2) {
        rep.violation = Some(format!("D({n}, {r}) not positive"));
    }
    Ok(rep)
}

fn hankel(r: usize, ctx: &PrecisionContext) -> Outcome {
    let m = 2 * r + 2;
    let t = moment_table(m / 2 + 1, ctx)?;
    let c = t.xi_hat_taylor(m)?;
    let s = power_sums(&c, m)?;
    let est = s.estimates(ctx.bits);
    let h = hankel_positive(&CoeffSequence::Approx(est[1..].to_vec()), r, ctx)?;
    let recs = h
        .minors
        .iter()
        .enumerate()
        .map(|(q, d)| Record::new().exact("q", q).real("minor", &d.value, &d.error).label("certified_positive", d.is_positive()))
        .collect();
    Ok(Report::records(recs))
}

fn xi_zeros(window: f64, ctx: &PrecisionContext) -> Outcome {
    let zeros = positive_zeros(window, ctx)?;
    let mut rep = Report::default();
    for (i, z) in zeros.iter().enumerate() {
        rep.records.push(
            Record::new()
                .exact("n", i + 1)
                .real("x", &z.location, &z.bracket_width)
                .label("simple", z.simple),
        );
    }
    // Ŝ decays like e^{-πx/8}; plot e^{πx/8}Ŝ(x) so the crossings stay visible.
    let mut ev = XiEvaluator::new(window, ctx);
    let n = 240;
    let mut mp = ctx.mp();
    let pi = mp.pi();
    for i in 0..=n {
        let x = window * i as f64 / n as f64;
        let v = ev.eval(&XiEvalRequest::new(Complex::from_f64(x, 0.0, ctx.bits), XiMethod::Auto))?;
        let scale = mp.exp(&(&pi * &mp.f(x)).mul_pow2(-3));
        rep.samples.push((x, (&v.value.re * &scale).to_f64()));
    }
    Ok(rep)
}

fn sum_rule(n: usize, ctx: &PrecisionContext) -> Outcome {
    let r = sum_rule_report(n, ctx)?;
    let mut rep = Report::records(vec![Record::new()
        .exact("n", r.n())
        .estimate("partial", r.partial())
        .estimate("target", &r.target)
        .estimate("gap", r.gap())]);
    rep.samples = r.partials.iter().enumerate().map(|(i, p)| ((i + 1) as f64, p.value.to_f64())).collect();
    if r.gap().sign() == Some(-1) {
        rep.violation = Some(format!("sum rule gap negative at N = {}", r.n()));
    }
    Ok(rep)
}

fn heat(lambda: f64, window: f64, ctx: &PrecisionContext) -> Outcome {
    let mut flow = HeatFlow::new(lambda, window, ctx)?;
    let zeros = flow.real_zeros(0.0, window, std::f64::consts::PI / 16.0)?;
    let mut rep = Report::default();
    for (i, z) in zeros.iter().enumerate() {
        rep.records.push(
            Record::new()
                .exact("lambda", lambda)
                .exact("n", i + 1)
                .real("x", &z.location, &z.bracket_width)
                .label("simple", z.simple),
        );
    }
    if rep.records.is_empty() {
        rep.records.push(Record::new().exact("lambda", lambda).exact("zeros", 0));
    }
    Ok(rep)
}

/// Radius n|p(z)/p'(z)| of a disk around z that holds a zero of p.
fn root_radius(p: &RealPolynomial, z: &Complex) -> Real {
    let n = p.degree().unwrap_or(1).max(1) as i64;
    let d = p.derivative().eval_complex(z);
    let v = p.eval_complex(z);
    if d.is_zero() {
        return Real::from_f64(f64::INFINITY, z.re.prec());
    }
    (&v.abs() / &d.abs()).mul_i64(n)
}

fn jensen(p: &RealPolynomial, ctx: &PrecisionContext) -> Outcome {
    let r = jensen_disks(p, ctx)?;
    let mut rep = Report::default();
    let sf = p.square_free_part();
    for z in &r.roots {
        let e = root_radius(&sf, z);
        rep.records.push(Record::new().label("kind", "root").real("re", &z.re, &e).real("im", &z.im, &e));
    }
    for d in &r.disks {
        let zero = Real::zero(ctx.bits);
        rep.records.push(Record::new().label("kind", "disk").real("re", &d.center, &zero).real("radius", &d.radius, &zero));
    }
    let dp = p.derivative();
    let dsf = dp.square_free_part();
    for (i, z) in r.critical_points.iter().enumerate() {
        let e = root_radius(&dsf, z);
        rep.records.push(
            Record::new()
                .label("kind", "critical")
                .real("re", &z.re, &e)
                .real("im", &z.im, &e)
                .label("covered", !r.uncovered.contains(&i)),
        );
    }
    if !r.all_contained() {
        rep.violation = Some(format!("{} nonreal critical points outside every Jensen disk", r.uncovered.len()));
    }
    Ok(rep)
}

fn ms_test(sequence: Option<&str>, fixture: Option<&PathBuf>, n: Option<usize>) -> Outcome {
    let text = match (sequence, fixture) {
        (Some(s), _) => s.to_string(),
        (None, Some(p)) => read_file(p)?,
        (None, None) => return Err(usage("give --sequence or --fixture")),
    };
    let g = TaylorSeq::new(parse_list(&text)?)?;
    let n = n.unwrap_or(g.n_max());
    let r = multiplier_sequence_test(&g, n)?;
    Ok(Report::records(vec![Record::new()
        .exact("checked", r.checked)
        .label("pass", r.pass)
        .label("first_failure", r.first_failure.map(|k| format!("n={k}")).unwrap_or_else(|| "none".into()))]))
}

fn lp_check(p: &RealPolynomial) -> Outcome {
    let sturm_real = has_only_real_zeros(p);
    let bh = borchardt_hermite(p)?;
    let agree = bh.all_real == sturm_real && Some(bh.distinct_count) == p.square_free_part().degree();
    let mut rep = Report::records(vec![Record::new()
        .exact("degree", p.degree().unwrap_or(0))
        .exact("distinct_real", distinct_real_roots(p))
        .exact("real_with_multiplicity", real_root_count(p))
        .exact("nonreal", nonreal_count(p))
        .label("sturm_all_real", sturm_real)
        .label("borchardt_all_real", bh.all_real)
        .label("agree", agree)]);
    if !agree {
        rep.violation = Some("Sturm and Borchardt-Hermite counts disagree".into());
    }
    Ok(rep)
}

fn ft_zeros(phi: &Density, alpha: &Real, k: usize, ctx: &PrecisionContext) -> Outcome {
    let mut rep = Report::default();
    if let Density::Step(s) = phi {
        let e = exceptional_test(s);
        rep.records.push(
            Record::new()
                .label("kind", "exceptionality")
                .label("exceptional", e.exceptional)
                .label("period", e.period.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "none".into()))
                .label("caveat", e.caveat().unwrap_or_default()),
        );
    }
    let r = ambient_report(phi, alpha, k, ctx)?;
    for iv in &r.intervals {
        let base = Record::new()
            .label("kind", "interval")
            .exact("p", iv.p)
            .real("lo", &iv.lo, &Estimate::rounded(iv.lo.clone()).error)
            .real("hi", &iv.hi, &Estimate::rounded(iv.hi.clone()).error);
        match iv.zeros.first() {
            Some(z) => rep.records.push(base.real("zero", &z.location, &z.bracket_width).label("simple", z.simple)),
            None => rep.records.push(base.label("zero", "none")),
        }
    }
    Ok(rep)
}

fn w_report(phi: &Density, alpha: &Real, window: f64, points: usize, ctx: &PrecisionContext) -> Outcome {
    if points < 2 || !(window > 0.0) {
        return Err(usage("--points must be >= 2 and --window > 0"));
    }
    let xs: Vec<f64> = (0..points).map(|i| window * i as f64 / (points - 1) as f64).collect();
    let vals: Vec<xizero_core::Result<Estimate>> = xs
        .par_iter()
        .map_init(
            || Quadrature::new(ctx),
            |q, &x| q.w(phi, alpha, &Real::from_f64(x, ctx.bits), ctx.bits),
        )
        .collect();
    let mut rep = Report::default();
    for (x, v) in xs.iter().zip(vals) {
        let v = v?;
        rep.samples.push((*x, v.value.to_f64()));
        rep.records.push(Record::new().exact("x", x).estimate("w", &v));
    }
    Ok(rep)
}

fn half_plane(phi: &Density, rect: &Rectangle, ctx: &PrecisionContext) -> Outcome {
    let n = half_plane_count(phi, rect, ctx)?;
    let mut rep = Report::records(vec![Record::new()
        .exact("x_lo", rect.x_lo)
        .exact("x_hi", rect.x_hi)
        .exact("y_lo", rect.y_lo)
        .exact("y_hi", rect.y_hi)
        .exact("count", n)]);
    if n > 0 && phi.is_increasing() {
        rep.violation = Some(format!("{n} zeros below the real axis for an increasing density"));
    }
    Ok(rep)
}

fn phi_alpha(alpha: &Real, grid: &[Real], ctx: &PrecisionContext) -> Outcome {
    let vals: Vec<_> = grid.par_iter().map(|x| phi_alpha_eval(alpha, x, ctx)).collect();
    let mut mp = ctx.mp();
    let a1 = alpha.add_f64(1.0);
    let mut rep = Report::default();
    for (x, v) in grid.iter().zip(vals) {
        let v = v?;
        let mut rec = Record::new().exact("x", decimal(x)).estimate("phi", &v);
        if x.is_positive() {
            let s = mp.pow(x, &a1);
            rec = rec.estimate("scaled", &v.scale(&s));
        }
        rep.samples.push((x.to_f64(), v.value.to_f64()));
        rep.records.push(rec);
    }
    Ok(rep)
}

fn selftest_report() -> Report {
    let mut rep = Report::default();
    let mut failed = Vec::new();
    for (c, o, _secs) in selftest::run_all() {
        if !o.pass {
            failed.push(c.id.to_string());
        }
        rep.records.push(
            Record::new()
                .exact("criterion", c.id)
                .label("title", c.title)
                .label("status", if o.pass { "pass" } else { "fail" })
                .label("detail", o.detail),
        );
    }
    if !failed.is_empty() {
        rep.violation = Some(format!("criteria failed: {}", failed.join(", ")));
    }
    rep
}

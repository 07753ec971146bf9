//! Zeros of finite Fourier transforms f_A(z) = ∫₀^A φ(t)e^{izt} dt and of the
//! sine-weighted W_{A,α}: closed forms for step densities, quadrature for
//! sampled ones, ambient-interval censuses, argument-principle counts below
//! the real axis, the Hermite–Biehler test, Φ_α, and a zero-sum specimen.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::lp::{complex_roots, distinct_real_roots, has_only_real_zeros};
use crate::numerics::{integrate_with, isolate_zeros, Estimate, PrecisionContext, TanhSinh, Upper, ZeroRecord};
use crate::poly::{Rational, RealPolynomial};
use crate::real::{parse_rational, Mp, Real};

/// Largest |Im z| accepted by the transform evaluators.
pub const STRIP: f64 = 8.0;

/// φ(t) = c_j on (t_j, t_{j+1}) with 0 = t₀ < t₁ < ⋯ < t_{n+1} = A.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    /// Interior breakpoints that stand in for irrational numbers.
    irrational: Vec<usize>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<StepFunction> {
        if breakpoints.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if !breakpoints[0].is_zero() {
            return Err(Error::InvalidArgument("first breakpoint must be 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        Ok(StepFunction {
            breakpoints,
            values,
            irrational: Vec::new(),
        })
    }

    /// Marks interior breakpoint `j` (1 ≤ j ≤ n) as a rational proxy for an
    /// irrational number.
    pub fn with_irrational_proxy(mut self, j: usize) -> Result<StepFunction> {
        if j == 0 || j + 1 >= self.breakpoints.len() {
            return Err(Error::InvalidArgument(format!("{j} is not an interior breakpoint")));
        }
        if !self.irrational.contains(&j) {
            self.irrational.push(j);
            self.irrational.sort_unstable();
        }
        Ok(self)
    }

    /// Parses the fixture format: a header `A=<rational>` followed by lines
    /// `t_j c_j`, where t_j is a rational (`num/den` or integer) and c_j a
    /// rational or decimal. A trailing word `irrational` flags a proxy
    /// breakpoint. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<StepFunction> {
        let bad = |line: usize, msg: &str| Error::InvalidArgument(format!("line {line}: {msg}"));
        let mut a = None;
        let mut ts = Vec::new();
        let mut cs = Vec::new();
        let mut flagged = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("A=") {
                a = Some(parse_rational(rest.trim()).ok_or_else(|| bad(i + 1, "bad A"))?);
                continue;
            }
            let mut parts = line.split_whitespace();
            let t = parts.next().and_then(parse_rational).ok_or_else(|| bad(i + 1, "bad breakpoint"))?;
            let c = parts.next().and_then(parse_rational).ok_or_else(|| bad(i + 1, "bad value"))?;
            match parts.next() {
                None => {}
                Some("irrational") => flagged.push(ts.len()),
                Some(_) => return Err(bad(i + 1, "unexpected trailing field")),
            }
            ts.push(t);
            cs.push(c);
        }
        let a = a.ok_or_else(|| Error::InvalidArgument("missing header A=<rational>".into()))?;
        ts.push(a);
        let mut s = StepFunction::new(ts, cs)?;
        for j in flagged {
            s = s.with_irrational_proxy(j)?;
        }
        Ok(s)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn irrational_proxies(&self) -> &[usize] {
        &self.irrational
    }

    pub fn length(&self) -> &Rational {
        self.breakpoints.last().expect("nonempty")
    }

    /// 0 < c₀ < c₁ < ⋯ < c_n.
    pub fn is_increasing(&self) -> bool {
        self.values[0].is_positive() && self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn eval(&self, t: &Rational) -> Option<&Rational> {
        if t <= &self.breakpoints[0] || t >= self.length() {
            return None;
        }
        let j = self.breakpoints.partition_point(|b| b <= t) - 1;
        Some(&self.values[j])
    }

    /// ∫₀^A φ.
    pub fn integral(&self) -> Rational {
        self.values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(c, w)| c * (&w[1] - &w[0]))
            .sum()
    }
}

impl fmt::Display for StepFunction {
    /// Writes the fixture format read by [`StepFunction::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A={}", self.length())?;
        for (j, c) in self.values.iter().enumerate() {
            write!(f, "{} {}", self.breakpoints[j], c)?;
            if self.irrational.contains(&j) {
                write!(f, " irrational")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub type DensityFn = Arc<dyn Fn(&Real, &mut Mp) -> Real + Send + Sync>;

/// A density given by an evaluator on (0, A).
#[derive(Clone)]
pub struct SampledDensity {
    name: String,
    length: Rational,
    f: DensityFn,
    monotone_increasing: bool,
    integrable_bound: f64,
}

const MONOTONE_GRID: usize = 1000;

impl SampledDensity {
    /// When `monotone_increasing` is set, samples on a 10³-point grid must be
    /// nondecreasing. This is a sanity gate, not a proof.
    pub fn new(name: &str, length: Rational, f: DensityFn, monotone_increasing: bool, integrable_bound: f64) -> Result<SampledDensity> {
        if !length.is_positive() {
            return Err(Error::InvalidArgument("A must be positive".into()));
        }
        let d = SampledDensity {
            name: name.into(),
            length,
            f,
            monotone_increasing,
            integrable_bound,
        };
        if monotone_increasing {
            let mut mp = Mp::new(64);
            let a = Real::from_rational(&d.length, 64);
            let mut prev: Option<Real> = None;
            for i in 1..MONOTONE_GRID {
                let t = (&a * &mp.int(i as i64)).div_i64(MONOTONE_GRID as i64);
                let v = (d.f)(&t, &mut mp);
                if let Some(p) = &prev {
                    if v < *p {
                        return Err(Error::InvalidArgument(format!("{name} decreases near t = {}", t.to_f64())));
                    }
                }
                prev = Some(v);
            }
        }
        Ok(d)
    }

    /// Built-in densities by name.
    pub fn registered(name: &str) -> Option<SampledDensity> {
        let one = Rational::one();
        let (f, len, mono, bound): (DensityFn, Rational, bool, f64) = match name {
            "linear" => (Arc::new(|t: &Real, _: &mut Mp| t.clone()), one, true, 1.0),
            "exp" => (Arc::new(|t: &Real, mp: &mut Mp| mp.exp(t)), one, true, 2.0),
            "quadratic" => (Arc::new(|t: &Real, _: &mut Mp| t * t), one, true, 1.0),
            "cubic" => (Arc::new(|t: &Real, _: &mut Mp| (&(t * t) * t).add_f64(0.5)), one, true, 1.5),
            "sqrt" => (Arc::new(|t: &Real, _: &mut Mp| t.sqrt()), one, true, 1.0),
            "hat" => (
                Arc::new(|t: &Real, _: &mut Mp| {
                    let d = t.add_f64(-1.0).abs();
                    let one = Real::one(t.prec());
                    &one - &d
                }),
                Rational::from_integer(BigInt::from(2)),
                false,
                1.0,
            ),
            _ => return None,
        };
        SampledDensity::new(name, len, f, mono, bound).ok()
    }

    pub fn registered_names() -> &'static [&'static str] {
        &["linear", "exp", "quadratic", "cubic", "sqrt", "hat"]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    pub fn monotone_increasing(&self) -> bool {
        self.monotone_increasing
    }

    pub fn integrable_bound(&self) -> f64 {
        self.integrable_bound
    }

    pub fn eval(&self, t: &Real, mp: &mut Mp) -> Real {
        (self.f)(t, mp)
    }
}

impl fmt::Debug for SampledDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledDensity")
            .field("name", &self.name)
            .field("length", &self.length)
            .field("monotone_increasing", &self.monotone_increasing)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum Density {
    Step(StepFunction),
    Sampled(SampledDensity),
}

impl Density {
    pub fn length(&self) -> &Rational {
        match self {
            Density::Step(s) => s.length(),
            Density::Sampled(s) => s.length(),
        }
    }

    pub fn is_increasing(&self) -> bool {
        match self {
            Density::Step(s) => s.is_increasing(),
            Density::Sampled(s) => s.monotone_increasing(),
        }
    }
}

impl From<StepFunction> for Density {
    fn from(s: StepFunction) -> Density {
        Density::Step(s)
    }
}

impl From<SampledDensity> for Density {
    fn from(s: SampledDensity) -> Density {
        Density::Sampled(s)
    }
}

/// A complex value with an absolute error bound on each part.
#[derive(Clone, Debug)]
pub struct FtValue {
    pub value: Complex,
    pub error: Real,
}

fn check_strip(z: &Complex) -> Result<()> {
    let im = z.im.to_f64();
    if im.abs() > STRIP {
        return Err(Error::StripViolation { im });
    }
    Ok(())
}

/// Extra bits that cover cancellation in the closed forms near z = 0.
fn guard_bits(z_abs: &Real, length: &Rational) -> usize {
    let za = z_abs.to_f64() * crate::real::rational_to_f64(length);
    let lost = if za > 0.0 { (-libm::log2(za)).max(0.0) } else { 0.0 };
    16 + libm::ceil(lost.min(4096.0)) as usize
}

/// Closed form of f_A for a step density, summed by parts:
/// (1/(iz))[c_n e^{izA} − c₀ + Σ_{j=1}^{n} (c_{j−1} − c_j) e^{izt_j}].
fn step_ft(s: &StepFunction, z: &Complex, bits: usize) -> FtValue {
    if z.is_zero() {
        let v = Real::from_rational(&s.integral(), bits);
        let err = &v.abs() * &v.ulp();
        return FtValue {
            value: Complex::real(v),
            error: err,
        };
    }
    let wb = bits + guard_bits(&z.abs(), s.length());
    let mut mp = Mp::new(wb);
    let z = Complex::new(z.re.with_prec(wb), z.im.with_prec(wb));
    let iz = z.mul_i();
    let n = s.values.len();
    let c = |j: usize| Real::from_rational(&s.values[j], wb);
    let mut acc = Complex::real(-c(0));
    let mut mass = c(0).abs();
    for j in 1..n {
        let t = Real::from_rational(&s.breakpoints[j], wb);
        let d = &c(j - 1) - &c(j);
        acc = &acc + &mp.cexp(&iz.scale(&t)).scale(&d);
        mass = &mass + &d.abs();
    }
    let a = Real::from_rational(s.length(), wb);
    acc = &acc + &mp.cexp(&iz.scale(&a)).scale(&c(n - 1));
    mass = &mass + &c(n - 1).abs();
    let value = &acc / &iz;
    // Each e^{izt} has modulus at most max(1, e^{−Im z·A}).
    let grow = mp.exp(&(&(-&z.im) * &a)).max(&mp.one());
    let err = (&(&mass * &grow) / &z.abs()).mul_i64(4 * (n as i64 + 2)).mul_pow2(-(wb as i64));
    FtValue {
        value: Complex::new(value.re.with_prec(bits), value.im.with_prec(bits)),
        error: err.with_prec(bits),
    }
}

/// W_{A,α}(x) for a step density:
/// (1/x)[c₀ cos α − c_n cos(xA + α) + Σ_{j=1}^{n} (c_j − c_{j−1}) cos(xt_j + α)].
fn step_w(s: &StepFunction, alpha: &Real, x: &Real, bits: usize) -> Estimate {
    let wb = bits + guard_bits(&x.abs(), s.length());
    let mut mp = Mp::new(wb);
    let alpha = alpha.with_prec(wb);
    if x.is_zero() {
        let v = &mp.sin(&alpha) * &Real::from_rational(&s.integral(), wb);
        return Estimate::rounded(v.with_prec(bits));
    }
    let x = x.with_prec(wb);
    let n = s.values.len();
    let c = |j: usize| Real::from_rational(&s.values[j], wb);
    let mut acc = &c(0) * &mp.cos(&alpha);
    let mut mass = c(0).abs();
    for j in 1..n {
        let t = Real::from_rational(&s.breakpoints[j], wb);
        let d = &c(j) - &c(j - 1);
        let arg = &(&x * &t) + &alpha;
        acc = &acc + &(&d * &mp.cos(&arg));
        mass = &mass + &d.abs();
    }
    let a = Real::from_rational(s.length(), wb);
    let arg = &(&x * &a) + &alpha;
    acc = &acc - &(&c(n - 1) * &mp.cos(&arg));
    mass = &mass + &c(n - 1).abs();
    let v = &acc / &x;
    let err = (&mass / &x.abs()).mul_i64(4 * (n as i64 + 2)).mul_pow2(-(wb as i64));
    Estimate::new(v.with_prec(bits), err.with_prec(bits))
}

/// Quadrature driver that keeps tanh-sinh tables per precision and doubles
/// precision on non-convergence.
pub struct Quadrature {
    ctx: PrecisionContext,
    rules: Vec<TanhSinh>,
}

impl Quadrature {
    pub fn new(ctx: &PrecisionContext) -> Quadrature {
        Quadrature {
            ctx: ctx.clone(),
            rules: Vec::new(),
        }
    }

    fn rule(&mut self, k: usize) -> &mut TanhSinh {
        while self.rules.len() <= k {
            let bits = self.ctx.bits << self.rules.len();
            self.rules.push(TanhSinh::new(bits));
        }
        &mut self.rules[k]
    }

    /// ∫₀^A g with an error bound, escalating precision from `bits`.
    fn integrate<G>(&mut self, mut g: G, length: &Rational, bits: usize) -> Result<Estimate>
    where
        G: FnMut(&Real, &mut Mp) -> Real,
    {
        let start = (0..=self.ctx.max_escalations as usize)
            .find(|&k| self.ctx.bits << k >= bits)
            .unwrap_or(self.ctx.max_escalations as usize);
        let mut last = None;
        for k in start..=self.ctx.max_escalations as usize {
            let ctx = self.ctx.with_bits(self.ctx.bits << k);
            let a = Real::zero(ctx.bits);
            let b = Upper::Finite(Real::from_rational(length, ctx.bits));
            let rule = self.rule(k);
            match integrate_with(&mut g, &a, &b, None, &ctx, rule) {
                Ok(r) => return Ok(Estimate::new(r.value, r.error_bound)),
                Err(e @ Error::NoConvergence { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("one attempt"))
    }

    /// f_A(z) by quadrature for any density; step densities are integrated
    /// piece by piece.
    pub fn ft(&mut self, phi: &Density, z: &Complex, bits: usize) -> Result<FtValue> {
        check_strip(z)?;
        match phi {
            Density::Sampled(s) => {
                let (x, y) = (z.re.clone(), z.im.clone());
                let real = y.is_zero();
                let f = s.f.clone();
                let re = self.integrate(
                    |t, mp| {
                        let w = if real { f(t, mp) } else { &f(t, mp) * &mp.exp(&(&(-&y) * t)) };
                        &w * &mp.cos(&(&x * t))
                    },
                    s.length(),
                    bits,
                )?;
                let im = self.integrate(
                    |t, mp| {
                        let w = if real { f(t, mp) } else { &f(t, mp) * &mp.exp(&(&(-&y) * t)) };
                        &w * &mp.sin(&(&x * t))
                    },
                    s.length(),
                    bits,
                )?;
                Ok(FtValue {
                    value: Complex::new(re.value, im.value),
                    error: re.error.max(&im.error),
                })
            }
            Density::Step(s) => {
                let mut mp = Mp::new(bits);
                let mut value = Complex::zero(bits);
                let mut error = Real::zero(bits);
                let iz = z.mul_i();
                for (j, c) in s.values.iter().enumerate() {
                    let t0 = Real::from_rational(&s.breakpoints[j], bits);
                    let width = &s.breakpoints[j + 1] - &s.breakpoints[j];
                    let cj = Real::from_rational(c, bits);
                    // ∫_{t_j}^{t_{j+1}} e^{izt} = e^{izt_j}∫₀^{w} e^{izu} du.
                    let (x, y) = (z.re.clone(), z.im.clone());
                    let re = self.integrate(|u, mp| &mp.exp(&(&(-&y) * u)) * &mp.cos(&(&x * u)), &width, bits)?;
                    let im = self.integrate(|u, mp| &mp.exp(&(&(-&y) * u)) * &mp.sin(&(&x * u)), &width, bits)?;
                    let piece = Complex::new(re.value, im.value);
                    let shift = mp.cexp(&iz.scale(&t0));
                    value = &value + &(&shift * &piece).scale(&cj);
                    let err = &(&re.error.max(&im.error) * &shift.abs()) * &cj.abs();
                    error = &error + &err.mul_i64(2);
                }
                Ok(FtValue { value, error })
            }
        }
    }

    /// W_{A,α}(x) for real x.
    pub fn w(&mut self, phi: &Density, alpha: &Real, x: &Real, bits: usize) -> Result<Estimate> {
        match phi {
            Density::Step(s) => Ok(step_w(s, alpha, x, bits)),
            Density::Sampled(s) => {
                let f = s.f.clone();
                let x = x.clone();
                let alpha = alpha.clone();
                self.integrate(|t, mp| &f(t, mp) * &mp.sin(&(&(&x * t) + &alpha)), s.length(), bits)
            }
        }
    }
}

/// f_A(z) = ∫₀^A φ(t)e^{izt} dt for |Im z| ≤ 8. Step densities use the closed
/// form; sampled densities use quadrature.
pub fn ft_eval(phi: &Density, z: &Complex, ctx: &PrecisionContext) -> Result<FtValue> {
    check_strip(z)?;
    match phi {
        Density::Step(s) => Ok(step_ft(s, z, ctx.bits)),
        Density::Sampled(_) => Quadrature::new(ctx).ft(phi, z, ctx.bits),
    }
}

/// W_{A,α}(x) = ∫₀^A φ(t) sin(xt + α) dt for α ∈ [0, π) and real x.
pub fn w_eval(phi: &Density, alpha: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Estimate> {
    check_alpha(alpha)?;
    Quadrature::new(ctx).w(phi, alpha, x, ctx.bits)
}

fn check_alpha(alpha: &Real) -> Result<()> {
    let a = alpha.to_f64();
    if !(0.0..core::f64::consts::PI).contains(&a) {
        return Err(Error::InvalidArgument(format!("α = {a} is outside [0, π)")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Exceptionality {
    pub exceptional: bool,
    pub increasing: bool,
    /// Interior breakpoints flagged as irrational proxies.
    pub irrational_proxies: Vec<usize>,
    /// q = lcm of the breakpoint denominators; f_A vanishes at 2πq·m, m ≠ 0.
    pub period: Option<BigInt>,
}

impl Exceptionality {
    pub fn caveat(&self) -> Option<String> {
        if !self.increasing {
            Some("values are not positive and strictly increasing".into())
        } else if !self.irrational_proxies.is_empty() {
            Some(format!(
                "breakpoints {:?} are rational proxies for irrational numbers",
                self.irrational_proxies
            ))
        } else {
            None
        }
    }
}

/// An increasing step function is exceptional when all its breakpoints are
/// rational. Breakpoints flagged as irrational proxies make the answer false.
pub fn exceptional_test(s: &StepFunction) -> Exceptionality {
    let increasing = s.is_increasing();
    let exceptional = increasing && s.irrational.is_empty();
    let period = exceptional.then(|| {
        s.breakpoints[1..]
            .iter()
            .fold(BigInt::one(), |q, t| q.lcm(t.denom()))
    });
    Exceptionality {
        exceptional,
        increasing,
        irrational_proxies: s.irrational.clone(),
        period,
    }
}

#[derive(Clone, Debug)]
pub struct AmbientInterval {
    /// I_p = ((p−1)π − α)/A, (pπ − α)/A).
    pub p: usize,
    pub lo: Real,
    pub hi: Real,
    pub zeros: Vec<ZeroRecord>,
    /// Certified sign of W at the upper endpoint.
    pub upper_sign: Option<i32>,
}

#[derive(Clone, Debug)]
pub struct AmbientReport {
    pub alpha: Real,
    pub k: usize,
    /// α = 0: W(0) = 0, and the zero is simple.
    pub zero_at_origin: bool,
    pub intervals: Vec<AmbientInterval>,
}

impl AmbientReport {
    pub fn zeros(&self) -> Vec<&ZeroRecord> {
        self.intervals.iter().flat_map(|i| i.zeros.iter()).collect()
    }
}

/// Census of the zeros of W_{A,α} on the positive side: I₁ must be zero-free,
/// each I_p (2 ≤ p ≤ K+1) must hold exactly one simple zero, and
/// (−1)^k W((kπ − α)/A) < 0 at every endpoint k = 1..=K+1.
pub fn ambient_report(phi: &Density, alpha: &Real, k: usize, ctx: &PrecisionContext) -> Result<AmbientReport> {
    check_alpha(alpha)?;
    if !phi.is_increasing() {
        return Err(Error::InvalidArgument("ambient intervals need an increasing density".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let bits = ctx.bits;
    let mut mp = Mp::new(bits);
    let pi = mp.pi();
    let len = Real::from_rational(phi.length(), bits);
    let alpha = alpha.with_prec(bits);
    let endpoint = |j: usize, mp: &Mp| &(&(&pi * &mp.int(j as i64)) - &alpha) / &len;
    let origin = alpha.is_zero();
    let lo = if origin {
        (&pi / &len).mul_pow2(-6)
    } else {
        -&(&alpha / &len)
    };
    let hi = endpoint(k + 1, &mp);

    let mut quad = Quadrature::new(ctx);
    let zeros = isolate_zeros(
        |x, mp| quad.w(phi, &alpha, x, mp.bits()),
        &lo,
        &hi,
        &(&pi / &len).mul_pow2(-3),
        ctx,
    )?;

    let mut intervals: Vec<AmbientInterval> = (1..=k + 1)
        .map(|p| AmbientInterval {
            p,
            lo: endpoint(p - 1, &mp),
            hi: endpoint(p, &mp),
            zeros: Vec::new(),
            upper_sign: None,
        })
        .collect();
    for z in zeros {
        let zl = &z.location - &z.bracket_width;
        let zh = &z.location + &z.bracket_width;
        let Some(iv) = intervals.iter_mut().find(|iv| zl > iv.lo && zh < iv.hi) else {
            return Err(Error::StructureViolation {
                interval: 0,
                detail: format!("zero near {} is not inside a single ambient interval", z.location.to_f64()),
            });
        };
        iv.zeros.push(z);
    }
    for iv in intervals.iter_mut() {
        let w = quad.w(phi, &alpha, &iv.hi, bits)?;
        iv.upper_sign = w.sign();
        let want = if iv.p % 2 == 0 { 1 } else { -1 };
        // (−1)^p W < 0 at the upper endpoint of I_p.
        if iv.upper_sign != Some(-want) {
            return Err(Error::StructureViolation {
                interval: iv.p,
                detail: format!("sign of W at the upper endpoint is {:?}", iv.upper_sign),
            });
        }
        let expected = usize::from(iv.p >= 2);
        if iv.zeros.len() != expected {
            return Err(Error::StructureViolation {
                interval: iv.p,
                detail: format!("{} zeros, expected {expected}", iv.zeros.len()),
            });
        }
        if iv.zeros.iter().any(|z| !z.simple) {
            return Err(Error::StructureViolation {
                interval: iv.p,
                detail: "zero is not simple".into(),
            });
        }
    }
    if !origin {
        let w0 = quad.w(phi, &alpha, &lo, bits)?;
        if w0.sign() != Some(1) {
            return Err(Error::StructureViolation {
                interval: 1,
                detail: "W(−α/A) is not positive".into(),
            });
        }
    }
    Ok(AmbientReport {
        alpha,
        k,
        zero_at_origin: origin,
        intervals,
    })
}

/// Axis-aligned rectangle [x_lo, x_hi] × [y_lo, y_hi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rectangle {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

const MAX_SPLIT_DEPTH: u32 = 32;

struct Winding<'a> {
    phi: &'a Density,
    ctx: PrecisionContext,
    quad: Quadrature,
    mp: Mp,
    evaluations: u64,
}

impl Winding<'_> {
    fn eval(&mut self, z: &Complex) -> Result<Complex> {
        self.evaluations += 1;
        let v = match self.phi {
            Density::Step(s) => step_ft(s, z, self.ctx.bits),
            Density::Sampled(_) => self.quad.ft(self.phi, z, self.ctx.bits)?,
        };
        let floor = &v.error.mul_i64(4) + &Real::from_f64(self.ctx.abs_tol, self.ctx.bits);
        if v.value.abs() <= floor {
            let (re, im) = z.to_f64();
            return Err(Error::BoundaryZeroSuspected { re, im });
        }
        Ok(v.value)
    }

    fn arg(&mut self, num: &Complex, den: &Complex) -> Real {
        let q = num / den;
        self.mp.arg(&q)
    }

    /// Δarg f from a to b, split until every step turns by less than π/2 and
    /// the two halves agree with the whole.
    fn segment(&mut self, a: &Complex, fa: &Complex, b: &Complex, fb: &Complex, depth: u32) -> Result<Real> {
        let m = (a + b).scale(&self.mp.ratio(1, 2));
        let fm = self.eval(&m)?;
        let d = self.arg(fb, fa);
        let d1 = self.arg(&fm, fa);
        let d2 = self.arg(fb, &fm);
        let quarter = self.mp.pi().mul_pow2(-1);
        let consistent = (&(&d1 + &d2) - &d).abs().to_f64() < 1e-6;
        if d.abs() < quarter && d1.abs() < quarter && d2.abs() < quarter && consistent {
            return Ok(d);
        }
        if depth >= MAX_SPLIT_DEPTH {
            // The argument still turns fast on a tiny segment: a zero sits on
            // or next to the contour.
            let (re, im) = m.to_f64();
            return Err(Error::BoundaryZeroSuspected { re, im });
        }
        let left = self.segment(a, fa, &m, &fm, depth + 1)?;
        let right = self.segment(&m, &fm, b, fb, depth + 1)?;
        Ok(&left + &right)
    }
}

/// Zeros of f_A inside a rectangle strictly below the real axis, by the
/// argument principle along the boundary.
pub fn half_plane_count(phi: &Density, rect: &Rectangle, ctx: &PrecisionContext) -> Result<usize> {
    if !(rect.y_hi < 0.0 && rect.y_lo < rect.y_hi && rect.x_lo < rect.x_hi) {
        return Err(Error::InvalidArgument("rectangle must lie strictly below the real axis".into()));
    }
    if rect.y_lo < -STRIP {
        return Err(Error::StripViolation { im: rect.y_lo });
    }
    let bits = ctx.bits;
    let mut w = Winding {
        phi,
        ctx: ctx.clone(),
        quad: Quadrature::new(ctx),
        mp: Mp::new(bits),
        evaluations: 0,
    };
    let c = |x: f64, y: f64| Complex::from_f64(x, y, bits);
    let corners = [
        c(rect.x_lo, rect.y_lo),
        c(rect.x_hi, rect.y_lo),
        c(rect.x_hi, rect.y_hi),
        c(rect.x_lo, rect.y_hi),
    ];
    let a = crate::real::rational_to_f64(phi.length()).max(1e-3);
    let mut total = Real::zero(bits);
    for i in 0..4 {
        let (p, q) = (&corners[i], &corners[(i + 1) % 4]);
        let len = (q - p).abs().to_f64();
        // Start with steps of about 1/(2A); the recursion refines further.
        let n = libm::ceil(len * a * 2.0).max(1.0) as i64;
        let mut prev = p.clone();
        let mut fprev = w.eval(&prev)?;
        for j in 1..=n {
            let next = &p.clone() + &(q - p).scale(&w.mp.ratio(j, n));
            let fnext = w.eval(&next)?;
            let d = w.segment(&prev, &fprev, &next, &fnext, 0)?;
            total = &total + &d;
            prev = next;
            fprev = fnext;
        }
    }
    let turns = (&total / &w.mp.pi().mul_pow2(1)).to_f64();
    let rounded = libm::round(turns);
    if (turns - rounded).abs() > 1e-3 || rounded < 0.0 {
        return Err(Error::NoConvergence {
            what: "winding number",
            detail: format!("accumulated {turns} turns"),
        });
    }
    Ok(rounded as usize)
}

/// Which open half-plane holds the zeros of P + iQ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteBiehler {
    pub p_real_simple: bool,
    pub q_real_simple: bool,
    pub interlaced: bool,
    pub x0: Rational,
    /// Q(x₀)P′(x₀) − P(x₀)Q′(x₀).
    pub wronskian: Rational,
    /// Interlaced and the Wronskian above is positive.
    pub wronskian_sign_ok: bool,
    /// Set when the zeros interlace: the half-plane holding the zeros of P + iQ.
    pub zeros_in: Option<HalfPlane>,
}

fn real_simple(p: &RealPolynomial) -> bool {
    has_only_real_zeros(p) && distinct_real_roots(p) == p.degree().unwrap_or(0)
}

/// Interlacing of the real zeros of P and Q, and the Wronskian sign at x₀ = 0
/// (or at 1/2 if that is a zero of the Wronskian).
pub fn hermite_biehler_check(p: &RealPolynomial, q: &RealPolynomial, ctx: &PrecisionContext) -> Result<HermiteBiehler> {
    if p.is_constant() || q.is_constant() {
        return Err(Error::InvalidArgument("P and Q must be nonconstant".into()));
    }
    if !p.gcd(q).is_constant() {
        return Err(Error::CommonZero);
    }
    let p_ok = real_simple(p);
    let q_ok = real_simple(q);
    let interlaced = p_ok && q_ok && {
        let mut merged: Vec<(Real, u8)> = Vec::new();
        for (poly, tag) in [(p, 0u8), (q, 1u8)] {
            for r in complex_roots(poly, ctx)? {
                merged.push((r.re, tag));
            }
        }
        merged.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        merged.windows(2).all(|w| w[0].1 != w[1].1)
    };
    let wr = |x: &Rational| q.eval(x) * p.derivative().eval(x) - p.eval(x) * q.derivative().eval(x);
    let mut x0 = Rational::zero();
    let mut wronskian = wr(&x0);
    if wronskian.is_zero() {
        x0 = Rational::new(BigInt::one(), BigInt::from(2));
        wronskian = wr(&x0);
    }
    let zeros_in = if interlaced && !wronskian.is_zero() {
        Some(if wronskian.is_positive() { HalfPlane::Lower } else { HalfPlane::Upper })
    } else {
        None
    };
    Ok(HermiteBiehler {
        p_real_simple: p_ok,
        q_real_simple: q_ok,
        interlaced,
        wronskian_sign_ok: interlaced && wronskian.is_positive(),
        x0,
        wronskian,
        zeros_in,
    })
}

/// Φ_α(x) = ∫₀^∞ exp(−t^α) cos(xt) dt for α > 1.
pub fn phi_alpha_eval(alpha: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Estimate> {
    if alpha.to_f64() <= 1.0 {
        return Err(Error::InvalidArgument("Φ_α needs α > 1".into()));
    }
    let bits = ctx.bits;
    let mut mp = Mp::new(bits);
    let af = alpha.to_f64();
    // Cut where e^{−T^α} is far below abs_tol; the tail is at most
    // e^{−T^α}/(αT^{α−1}).
    let target = -libm::log(ctx.abs_tol) + 16.0;
    let cut = libm::pow(target, 1.0 / af).max(1.0);
    let t = Rational::new(BigInt::from(libm::ceil(cut * 64.0) as i64), BigInt::from(64));
    let tr = Real::from_rational(&t, bits);
    let ta = mp.pow(&tr, alpha);
    let tail = &mp.exp(&-&ta) / &(alpha * &mp.pow(&tr, &alpha.add_f64(-1.0)));
    let alpha = alpha.clone();
    let x = x.clone();
    let mut quad = Quadrature::new(ctx);
    let r = quad.integrate(
        |s, mp| {
            if s.is_zero() {
                return mp.one();
            }
            let sa = mp.pow(s, &alpha);
            &mp.exp(&-&sa) * &mp.cos(&(&x * s))
        },
        &t,
        bits,
    )?;
    Ok(Estimate::new(r.value.with_prec(bits), &r.error.with_prec(bits) + &tail))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticPoint {
    pub x: f64,
    /// x^{α+1}Φ_α(x).
    pub scaled: f64,
    /// Γ(α+1) sin(πα/2).
    pub limit: f64,
    pub deviation: f64,
}

/// x^{α+1}Φ_α(x) against its limit Γ(α+1) sin(πα/2) at each x.
pub fn asymptotic_check(alpha: f64, xs: &[f64], ctx: &PrecisionContext) -> Result<Vec<AsymptoticPoint>> {
    let a = Real::from_f64(alpha, ctx.bits);
    let limit = libm::tgamma(alpha + 1.0) * libm::sin(core::f64::consts::PI * alpha / 2.0);
    xs.iter()
        .map(|&x| {
            let v = phi_alpha_eval(&a, &Real::from_f64(x, ctx.bits), ctx)?;
            let scaled = v.value.to_f64() * libm::pow(x, alpha + 1.0);
            Ok(AsymptoticPoint {
                x,
                scaled,
                limit,
                deviation: scaled - limit,
            })
        })
        .collect()
}

/// Zeros fed to [`bernstein_zero_sum`].
#[derive(Clone, Debug)]
pub enum ZeroSource {
    /// f(z) = (e^{iz} − 1)(e^{−iz} + i)/(iz): zeros 2πk (k ≠ 0) and
    /// π/2 + 2πm (m ∈ ℤ), all simple and real.
    Specimen,
    /// An explicit finite zero list.
    Finite(Vec<Complex>),
}

/// Zeros of the specimen with modulus at most r, in order of modulus.
pub fn specimen_zeros(r: f64, bits: usize) -> Vec<Real> {
    let mut mp = Mp::new(bits);
    let pi = mp.pi();
    let mut out: Vec<Real> = Vec::new();
    let kmax = libm::floor(r / core::f64::consts::TAU) as i64 + 1;
    for k in 1..=kmax {
        for s in [1, -1] {
            let z = pi.mul_i64(2 * k * s);
            if z.abs().to_f64() <= r {
                out.push(z);
            }
        }
    }
    let mmax = libm::floor(r / core::f64::consts::TAU) as i64 + 1;
    for m in -mmax..=mmax {
        let z = &pi.mul_pow2(-1) + &pi.mul_i64(2 * m);
        if z.abs().to_f64() <= r {
            out.push(z);
        }
    }
    out.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite"));
    out
}

/// The specimen in closed form.
pub fn specimen_eval(z: &Complex, mp: &mut Mp) -> Complex {
    let bits = z.re.prec();
    let iz = z.mul_i();
    let a = &mp.cexp(&iz) - &Complex::one(bits);
    let b = &mp.cexp(&-&iz) + &Complex::i(bits);
    &(&a * &b) / &iz
}

/// f′(0)/f(0) for the specimen from the first two Taylor coefficients of each
/// factor: (e^{iz} − 1)/(iz) = 1 + iz/2 + ⋯ and e^{−iz} + i = (1 + i) − iz + ⋯.
pub fn specimen_log_derivative(bits: usize) -> Complex {
    let mp = Mp::new(bits);
    let a0 = Complex::one(bits);
    let a1 = Complex::new(mp.zero(), mp.ratio(1, 2));
    let b0 = Complex::new(mp.one(), mp.one());
    let b1 = Complex::new(mp.zero(), -mp.one());
    &(&a1 / &a0) + &(&b1 / &b0)
}

/// Σ_{r_n ≤ R} cos θ_n / r_n = Σ Re(1/z_n) for each R in `radii`.
pub fn bernstein_zero_sum(source: &ZeroSource, radii: &[f64], ctx: &PrecisionContext) -> Vec<(f64, Real)> {
    let bits = ctx.bits;
    let rmax = radii.iter().cloned().fold(0.0, f64::max);
    let zeros: Vec<Complex> = match source {
        ZeroSource::Specimen => specimen_zeros(rmax, bits).into_iter().map(Complex::real).collect(),
        ZeroSource::Finite(z) => {
            let mut z = z.clone();
            z.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite"));
            z
        }
    };
    radii
        .iter()
        .map(|&r| {
            let mut s = Real::zero(bits);
            for z in zeros.iter().filter(|z| z.abs().to_f64() <= r) {
                s = &s + &(&z.re / &z.norm_sqr());
            }
            (r, s)
        })
        .collect()
}

//! Ŝ(z) = (1/8)Ξ(z/2) = ∫₀^∞ Φ(t) cos(zt) dt and what is built on it: its
//! positive zeros x_n, the sum rule Σ x_n^{−2} = b₁/(2b₀), the heat flow
//! Ξ_λ(z) = 8∫₀^∞ Φ(s) e^{4λs²} cos(2zs) ds, and e^{−λD²} on polynomials.

use alloc::vec::Vec;

use num_traits::One;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::moments::{moment_table, tail_envelope_weighted, MomentTable};
use crate::numerics::{isolate_zeros, Estimate, PrecisionContext, ZeroRecord};
use crate::phi::phi_fast;
use crate::poly::{Rational, RealPolynomial};
use crate::real::{Mp, Real};

/// Largest |Im z| accepted by the evaluators.
pub const STRIP: f64 = 1.0;
/// Default (and largest) window for `positive_zeros`.
pub const MAX_WINDOW: f64 = 200.0;
/// `Auto` uses the Taylor series for |Re z| up to here and the integral beyond.
pub const SERIES_CROSSOVER: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiMethod {
    Integral,
    Series,
    Auto,
    /// Both methods; fails with `MethodDisagreement` if they differ by more
    /// than the sum of their error bounds.
    Checked,
}

#[derive(Clone, Debug)]
pub struct XiEvalRequest {
    pub z: Complex,
    pub method: XiMethod,
    /// Number of Taylor terms kept; chosen from the tail bound when absent.
    pub series_terms: Option<usize>,
}

impl XiEvalRequest {
    pub fn new(z: Complex, method: XiMethod) -> XiEvalRequest {
        XiEvalRequest {
            z,
            method,
            series_terms: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct XiValue {
    pub value: Complex,
    /// Bound on |computed − exact| in the complex plane.
    pub error: Real,
    /// Method actually used (`Auto` is resolved).
    pub method: XiMethod,
    /// Taylor terms or trapezoid nodes used.
    pub terms: usize,
}

impl XiValue {
    /// The real part with the full error bound.
    pub fn real_estimate(&self) -> Estimate {
        Estimate::new(self.value.re.clone(), self.error.clone())
    }
}

fn check_strip(z: &Complex, limit: f64) -> Result<()> {
    let im = z.im.to_f64().abs();
    if im > limit {
        return Err(Error::StripViolation { im });
    }
    Ok(())
}

/// Bits lost to the decay |Ŝ(x)| ≈ e^{−π|x|/8}.
fn decay_bits(x: f64) -> usize {
    (core::f64::consts::PI * x.abs() / (8.0 * core::f64::consts::LN_2)).ceil() as usize + 8
}

/// Trapezoid nodes g_j = Φ(jh)e^{4λ(jh)²} for ∫₀^∞ g(t) cos(ωt) dt with
/// |Re ω| ≤ max_freq and |Im ω| ≤ growth.
///
/// The step is chosen so that already the coarse rule 2h aliases below the
/// working precision; the fine-minus-coarse difference then bounds the
/// discretization error of the fine sum.
#[derive(Clone, Debug)]
struct CosTransform {
    bits: usize,
    max_freq: f64,
    growth: Real,
    h: Real,
    nodes: Vec<Real>,
    tail: Real,
}

impl CosTransform {
    fn build(lambda: &Real, max_freq: f64, growth: f64, req_bits: usize) -> Result<CosTransform> {
        let bits = (req_bits + 64 + decay_bits(max_freq)).div_ceil(64) * 64;
        let mut mp = Mp::new(bits);
        let lambda = lambda.with_prec(bits);
        let growth_r = mp.f(growth);
        // Fourier transforms of functions analytic in |Im t| < π/8 decay like
        // e^{−π|ω|/8}; the coarse rule aliases from 2π/(2h) − |ω|.
        let pi = core::f64::consts::PI;
        let reach = max_freq + 2.0 * growth + 8.0 * (bits as f64 * core::f64::consts::LN_2 + 16.0) / pi;
        let log_inv_h = libm::log2(reach / pi).ceil().max(4.0) as i64;
        let h = Real::pow2(-log_inv_h, bits);
        let coarse = h.mul_pow2(1);
        let target = Real::pow2(-(bits as i64 - 48), bits);
        let eighth = mp.ratio(1, 8);
        let mut t_end = eighth.clone();
        loop {
            if t_end > mp.int(4) {
                return Err(Error::NoConvergence {
                    what: "cosine transform window",
                    detail: alloc::format!("tail envelope above 2^-{} at t = 4", bits - 48),
                });
            }
            match tail_envelope_weighted(0, &t_end, &coarse, &growth_r, &lambda, &mut mp) {
                Some(b) if b <= target => break,
                _ => t_end = &t_end + &eighth,
            }
        }
        let tail = tail_envelope_weighted(0, &t_end, &coarse, &growth_r, &lambda, &mut mp).expect("checked above");
        let n = (&t_end / &h).to_f64().round() as usize;
        let mut nodes = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let t = h.mul_i64(j as i64);
            let mut g = phi_fast(&t, &mut mp);
            if !lambda.is_zero() {
                let w = mp.exp(&(&(&t * &t) * &lambda).mul_pow2(2));
                g = &g * &w;
            }
            nodes.push(g);
        }
        Ok(CosTransform {
            bits,
            max_freq,
            growth: growth_r,
            h,
            nodes,
            tail,
        })
    }

    fn covers(&self, omega: &Complex) -> bool {
        omega.re.to_f64().abs() <= self.max_freq && omega.im.abs() <= self.growth
    }

    fn eval(&self, omega: &Complex) -> (Complex, Real) {
        let mut mp = Mp::new(self.bits);
        let omega = Complex::new(omega.re.with_prec(self.bits), omega.im.with_prec(self.bits));
        let step = omega.scale(&self.h).mul_i();
        let fwd = mp.cexp(&step);
        let bwd = mp.cexp(&-&step);
        let mut p = Complex::one(self.bits);
        let mut q = Complex::one(self.bits);
        let mut fine = Complex::zero(self.bits);
        let mut coarse = Complex::zero(self.bits);
        let mut abs_sum = mp.zero();
        for (j, g) in self.nodes.iter().enumerate() {
            if j > 0 {
                if j % 64 == 0 {
                    // Re-anchor the running powers.
                    let s = step.scale(&mp.int(j as i64));
                    p = mp.cexp(&s);
                    q = mp.cexp(&-&s);
                } else {
                    p = &p * &fwd;
                    q = &q * &bwd;
                }
            }
            let c = (&p + &q).scale(&mp.ratio(1, 2));
            let mut term = c.scale(g);
            if j == 0 {
                term = term.scale(&mp.ratio(1, 2));
            }
            abs_sum = &abs_sum + &term.abs();
            if j % 2 == 0 {
                coarse = &coarse + &term;
            }
            fine = &fine + &term;
        }
        let fine = fine.scale(&self.h);
        let coarse = coarse.scale(&self.h.mul_pow2(1));
        let diff = (&fine - &coarse).abs();
        let rounding = (&(&abs_sum * &self.h) * &mp.eps()).mul_i64(256);
        let error = &(&diff + &self.tail) + &rounding;
        (fine, error)
    }
}

/// Natural log of Φ(t) in f64 for t ≥ 0, without underflow.
fn ln_phi_f64(t: f64) -> f64 {
    let pi = core::f64::consts::PI;
    let y = pi * libm::exp(4.0 * t);
    let lead = t + libm::log(y) + libm::log(2.0 * y - 3.0) - y;
    let mut rest = 0.0;
    for n in 2..=6 {
        let n2 = (n * n) as f64;
        rest += n2 * (2.0 * n2 * y - 3.0) / (2.0 * y - 3.0) * libm::exp(-(n2 - 1.0) * y);
    }
    lead + libm::log1p(rest)
}

/// ln b_k for k = 0..=kmax in f64, for planning only.
fn ln_moments_f64(kmax: usize) -> Vec<f64> {
    const N: usize = 4000;
    let h = 2.5 / N as f64;
    let lp: Vec<(f64, f64)> = (1..=N).map(|j| (libm::log(j as f64 * h), ln_phi_f64(j as f64 * h))).collect();
    let lp0 = ln_phi_f64(0.0);
    (0..=kmax)
        .map(|k| {
            let mut m = if k == 0 { lp0 } else { f64::NEG_INFINITY };
            for &(lt, lf) in &lp {
                m = m.max(2.0 * k as f64 * lt + lf);
            }
            let mut s = if k == 0 { 0.5 * libm::exp(lp0 - m) } else { 0.0 };
            for &(lt, lf) in &lp {
                s += libm::exp(2.0 * k as f64 * lt + lf - m);
            }
            m + libm::log(s * h)
        })
        .collect()
}

fn ln_factorial_f64(n: usize) -> f64 {
    (2..=n).map(|k| libm::log(k as f64)).sum()
}

/// Working precision and term count for Σ(−1)^k C_k z^{2k} at |z| = r.
struct SeriesPlan {
    bits: usize,
    terms: usize,
}

fn plan_series(r: f64, req_bits: usize) -> SeriesPlan {
    let ln2 = core::f64::consts::LN_2;
    if r == 0.0 {
        return SeriesPlan {
            bits: req_bits + 64,
            terms: 1,
        };
    }
    let kmax = (4.0 * r + 40.0 + req_bits as f64 / 2.0) as usize;
    let lb = ln_moments_f64(kmax);
    let ln_term = |k: usize| lb[k] - ln_factorial_f64(2 * k) + 2.0 * k as f64 * libm::log(r);
    let peak = (0..=kmax).map(ln_term).fold(f64::NEG_INFINITY, f64::max);
    let ln_result = lb[0] - core::f64::consts::PI * r / 8.0;
    let cancel = ((peak - ln_result) / ln2).max(0.0).ceil() as usize;
    let cutoff = ln_result - (req_bits as f64 + 16.0) * ln2;
    let mut terms = kmax;
    let mut past_peak = false;
    for k in 1..=kmax {
        let lt = ln_term(k);
        if lt < ln_term(k - 1) {
            past_peak = true;
        }
        if past_peak && lt <= cutoff {
            terms = k;
            break;
        }
    }
    SeriesPlan {
        bits: (req_bits + 64 + cancel).div_ceil(64) * 64,
        terms,
    }
}

/// Extra Taylor coefficients kept beyond the truncation point to check
/// monotone decay of the terms.
const MONOTONE_CHECK: usize = 4;

#[derive(Clone, Debug)]
struct SeriesTable {
    req_bits: usize,
    radius: f64,
    bits: usize,
    table: MomentTable,
}

impl SeriesTable {
    fn build(radius: f64, req_bits: usize, min_terms: usize, ctx: &PrecisionContext) -> Result<SeriesTable> {
        let plan = plan_series(radius, req_bits);
        let kmax = plan.terms.max(min_terms) + MONOTONE_CHECK;
        let mut mctx = ctx.with_bits(plan.bits);
        mctx.rel_tol = libm::exp2(-((plan.bits as f64 - 40.0).min(1000.0)));
        let table = moment_table(kmax, &mctx)?;
        Ok(SeriesTable {
            req_bits,
            radius,
            bits: plan.bits,
            table,
        })
    }

    fn eval(&self, z: &Complex, fixed_terms: Option<usize>) -> Result<XiValue> {
        let bits = self.bits;
        let mp = Mp::new(bits);
        let z = Complex::new(z.re.with_prec(bits), z.im.with_prec(bits));
        let z2 = &z * &z;
        let r2 = z2.abs();
        let is_real = z.im.is_zero();
        let terms = match fixed_terms {
            Some(k) => k,
            None => plan_series(z.abs().to_f64(), self.req_bits).terms,
        };
        let last = terms + MONOTONE_CHECK;
        if last > self.table.kmax {
            return Err(Error::InsufficientData {
                needed: last,
                available: self.table.kmax,
            });
        }
        let mut sum = Complex::zero(bits);
        let mut pow = Complex::one(bits);
        let mut rpow = mp.one();
        let mut coeff_err = mp.zero();
        let mut abs_sum = mp.zero();
        let mut tail_terms = Vec::with_capacity(MONOTONE_CHECK + 1);
        for k in 0..=last {
            let c = self.table.c(k).expect("k within table");
            if k < terms {
                let mut term = pow.scale(&c.value);
                if k % 2 == 1 {
                    term = -&term;
                }
                abs_sum = &abs_sum + &term.abs();
                sum = &sum + &term;
                coeff_err = &coeff_err + &(&c.error * &rpow);
            } else {
                tail_terms.push(&(&c.value.abs() + &c.error) * &rpow);
            }
            pow = &pow * &z2;
            rpow = &rpow * &r2;
        }
        // Terms past the cut must already be decreasing.
        let mut ratio = mp.zero();
        for w in tail_terms.windows(2) {
            if w[1] >= w[0] && !w[0].is_zero() {
                return Err(Error::NoConvergence {
                    what: "xi series",
                    detail: alloc::format!("terms not decreasing after {terms} at |z| = {}", z.abs()),
                });
            }
            if !w[0].is_zero() {
                ratio = ratio.max(&(&w[1] / &w[0]));
            }
        }
        let first_omitted = tail_terms[0].clone();
        let truncation = if is_real {
            first_omitted
        } else {
            &first_omitted / &(&mp.one() - &ratio)
        };
        let rounding = (&abs_sum * &mp.eps()).mul_i64(2 * terms as i64 + 16);
        let error = &(&truncation + &coeff_err) + &rounding;
        Ok(XiValue {
            value: sum,
            error,
            method: XiMethod::Series,
            terms,
        })
    }
}

/// Evaluates Ŝ with transform nodes and moment tables cached per precision,
/// for repeated evaluation along a window.
#[derive(Clone, Debug)]
pub struct XiEvaluator {
    ctx: PrecisionContext,
    window: f64,
    transforms: Vec<(usize, CosTransform)>,
    series: Vec<SeriesTable>,
}

impl XiEvaluator {
    /// Evaluator for |Re z| ≤ window.
    pub fn new(window: f64, ctx: &PrecisionContext) -> XiEvaluator {
        XiEvaluator {
            ctx: ctx.clone(),
            window: window.abs(),
            transforms: Vec::new(),
            series: Vec::new(),
        }
    }

    fn transform(&mut self, req_bits: usize, omega: &Complex) -> Result<&CosTransform> {
        let pos = self
            .transforms
            .iter()
            .position(|(b, t)| *b == req_bits && t.covers(omega));
        let idx = match pos {
            Some(i) => i,
            None => {
                let freq = self.window.max(omega.re.to_f64().abs());
                let t = CosTransform::build(&Real::zero(64), freq, STRIP, req_bits)?;
                self.transforms.push((req_bits, t));
                self.transforms.len() - 1
            }
        };
        Ok(&self.transforms[idx].1)
    }

    fn series_table(&mut self, req_bits: usize, radius: f64, min_terms: usize) -> Result<&SeriesTable> {
        let pos = self.series.iter().position(|s| {
            s.req_bits == req_bits && s.radius >= radius && s.table.kmax >= min_terms + MONOTONE_CHECK
        });
        let idx = match pos {
            Some(i) => i,
            None => {
                let r = radius.max(SERIES_CROSSOVER.min(self.window));
                let s = SeriesTable::build(r, req_bits, min_terms, &self.ctx)?;
                self.series.push(s);
                self.series.len() - 1
            }
        };
        Ok(&self.series[idx])
    }

    /// Ŝ(z) at the context precision.
    pub fn eval(&mut self, req: &XiEvalRequest) -> Result<XiValue> {
        self.eval_at(req, self.ctx.bits)
    }

    /// Ŝ(z) aiming at `req_bits` of accuracy relative to the decaying scale.
    pub fn eval_at(&mut self, req: &XiEvalRequest, req_bits: usize) -> Result<XiValue> {
        check_strip(&req.z, STRIP)?;
        let x = req.z.re.to_f64().abs();
        let method = match req.method {
            XiMethod::Auto if x <= SERIES_CROSSOVER => XiMethod::Series,
            XiMethod::Auto => XiMethod::Integral,
            m => m,
        };
        match method {
            XiMethod::Integral => {
                let t = self.transform(req_bits, &req.z)?;
                let (value, error) = t.eval(&req.z);
                Ok(XiValue {
                    value,
                    error,
                    method,
                    terms: t.nodes.len(),
                })
            }
            XiMethod::Series => {
                let radius = req.z.abs().to_f64();
                let min_terms = req.series_terms.unwrap_or(0);
                let s = self.series_table(req_bits, radius, min_terms)?;
                s.eval(&req.z, req.series_terms)
            }
            _ => {
                let mut a = req.clone();
                a.method = XiMethod::Series;
                let s = self.eval_at(&a, req_bits)?;
                a.method = XiMethod::Integral;
                let i = self.eval_at(&a, req_bits)?;
                let diff = (&s.value - &i.value).abs();
                let tol = &s.error + &i.error;
                if diff > tol {
                    return Err(Error::MethodDisagreement {
                        z: req.z.re.to_f64(),
                        difference: diff.to_f64(),
                        tolerance: tol.to_f64(),
                    });
                }
                // The tighter of the two.
                Ok(if s.error <= i.error {
                    XiValue { method: XiMethod::Checked, ..s }
                } else {
                    XiValue { method: XiMethod::Checked, ..i }
                })
            }
        }
    }
}

/// Ŝ(z) = (1/8)Ξ(z/2) for |Im z| ≤ 1.
pub fn xi_hat(z: &Complex, method: XiMethod, ctx: &PrecisionContext) -> Result<XiValue> {
    xi_hat_with(&XiEvalRequest::new(z.clone(), method), ctx)
}

pub fn xi_hat_with(req: &XiEvalRequest, ctx: &PrecisionContext) -> Result<XiValue> {
    ctx.validate()?;
    let mut ev = XiEvaluator::new(req.z.re.to_f64().abs(), ctx);
    ev.eval(req)
}

/// e^{π|x|/8}·Ŝ(x): same zeros as Ŝ, order-one magnitude across the window.
fn scaled_xi_hat(ev: &mut XiEvaluator, x: &Real, req_bits: usize) -> Result<Estimate> {
    let v = ev.eval_at(&XiEvalRequest::new(Complex::real(x.clone()), XiMethod::Auto), req_bits)?;
    let mut mp = Mp::new(v.value.re.prec());
    let pi = mp.pi();
    let s = mp.exp(&(&pi * &x.abs()).mul_pow2(-3));
    Ok(v.real_estimate().scale(&s))
}

/// The positive zeros x_n ≤ X of Ŝ, scanned at step π/4 and refined to the
/// context's abs_tol.
pub fn positive_zeros(x_max: f64, ctx: &PrecisionContext) -> Result<Vec<ZeroRecord>> {
    ctx.validate()?;
    if !(x_max <= MAX_WINDOW) {
        return Err(Error::InvalidArgument(alloc::format!(
            "zero window {x_max} exceeds {MAX_WINDOW}"
        )));
    }
    if x_max <= 0.0 {
        return Ok(Vec::new());
    }
    let mut ev = XiEvaluator::new(x_max, ctx);
    let mut mp = ctx.mp();
    let step = mp.pi().mul_pow2(-2);
    let f = |x: &Real, m: &mut Mp| scaled_xi_hat(&mut ev, x, m.bits());
    isolate_zeros(f, &mp.zero(), &mp.f(x_max), &step, ctx)
}

/// Partial sums of Σ x_n^{−2} against b₁/(2b₀).
#[derive(Clone, Debug)]
pub struct SumRuleReport {
    pub zeros: Vec<ZeroRecord>,
    /// partials[n − 1] = Σ_{m ≤ n} x_m^{−2}.
    pub partials: Vec<Estimate>,
    pub target: Estimate,
    /// gaps[n − 1] = target − partials[n − 1].
    pub gaps: Vec<Estimate>,
}

impl SumRuleReport {
    pub fn n(&self) -> usize {
        self.partials.len()
    }

    pub fn partial(&self) -> &Estimate {
        self.partials.last().expect("at least one zero")
    }

    pub fn gap(&self) -> &Estimate {
        self.gaps.last().expect("at least one zero")
    }
}

/// Window expected to hold N zeros of Ŝ, from the zero-counting function of ζ
/// with a margin.
fn window_for(n: usize) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let count = |t: f64| t / two_pi * libm::log(t / (two_pi * core::f64::consts::E)) + 0.875;
    let mut t = 14.0;
    while count(t) < n as f64 + 0.5 && t < MAX_WINDOW {
        t += 0.5;
    }
    (2.0 * t + 8.0).min(MAX_WINDOW)
}

pub fn sum_rule_report(n: usize, ctx: &PrecisionContext) -> Result<SumRuleReport> {
    ctx.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("sum rule needs N ≥ 1".into()));
    }
    let mut zeros = positive_zeros(window_for(n), ctx)?;
    if zeros.len() < n {
        zeros = positive_zeros(MAX_WINDOW, ctx)?;
    }
    if zeros.len() < n {
        return Err(Error::InsufficientData {
            needed: n,
            available: zeros.len(),
        });
    }
    zeros.truncate(n);
    let table = moment_table(1, ctx)?;
    let b0 = table.b(0).expect("k = 0");
    let b1 = table.b(1).expect("k = 1");
    let target = b1.div(&b0.scale(&Real::from_i64(2, ctx.bits)));
    let mut partials = Vec::with_capacity(n);
    let mut gaps = Vec::with_capacity(n);
    let mut acc = Estimate::exact(Real::zero(ctx.bits));
    for z in &zeros {
        let x = &z.location;
        let inv = (x * x).recip();
        // 1/x² moves by at most (x − w)^{−2} − x^{−2} across the bracket.
        let lo = x - &z.bracket_width;
        let spread = &(&lo * &lo).recip() - &inv;
        acc = acc.add(&Estimate::new(inv, spread));
        let gap = target.sub(&acc);
        if gap.value.is_negative() && gap.value.abs() > gap.error {
            return Err(Error::NegativeGap {
                n: partials.len() + 1,
                gap: gap.value.to_f64(),
            });
        }
        partials.push(acc.clone());
        gaps.push(gap);
    }
    Ok(SumRuleReport {
        zeros,
        partials,
        target,
        gaps,
    })
}

/// Ξ_λ(z) = ∫ Φ₃₈(t) e^{λt²} e^{izt} dt = 8∫₀^∞ Φ(s) e^{4λs²} cos(2zs) ds for
/// λ ≤ 1 and |Im z| ≤ 1. Ξ₀(z) = 8Ŝ(2z).
#[derive(Clone, Debug)]
pub struct HeatFlow {
    lambda: Real,
    window: f64,
    ctx: PrecisionContext,
    transforms: Vec<(usize, CosTransform)>,
}

impl HeatFlow {
    pub fn new(lambda: f64, window: f64, ctx: &PrecisionContext) -> Result<HeatFlow> {
        ctx.validate()?;
        if !(lambda <= 1.0) {
            return Err(Error::InvalidArgument(alloc::format!("heat parameter {lambda} exceeds 1")));
        }
        Ok(HeatFlow {
            lambda: Real::from_f64(lambda, 64),
            window: window.abs(),
            ctx: ctx.clone(),
            transforms: Vec::new(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.to_f64()
    }

    pub fn eval(&mut self, z: &Complex) -> Result<XiValue> {
        self.eval_at(z, self.ctx.bits)
    }

    pub fn eval_at(&mut self, z: &Complex, req_bits: usize) -> Result<XiValue> {
        check_strip(z, STRIP)?;
        let omega = z.scale(&Real::from_i64(2, z.re.prec()));
        let pos = self
            .transforms
            .iter()
            .position(|(b, t)| *b == req_bits && t.covers(&omega));
        let idx = match pos {
            Some(i) => i,
            None => {
                let freq = (2.0 * self.window).max(omega.re.to_f64().abs());
                let t = CosTransform::build(&self.lambda, freq, 2.0 * STRIP, req_bits)?;
                self.transforms.push((req_bits, t));
                self.transforms.len() - 1
            }
        };
        let t = &self.transforms[idx].1;
        let (v, e) = t.eval(&omega);
        let eight = Real::from_i64(8, t.bits);
        Ok(XiValue {
            value: v.scale(&eight),
            error: &e * &eight,
            method: XiMethod::Integral,
            terms: t.nodes.len(),
        })
    }

    /// Real zeros of Ξ_λ on [lo, hi], located by sign changes of
    /// e^{π|x|/4}Ξ_λ(x) on a grid of the given step and refined.
    pub fn real_zeros(&mut self, lo: f64, hi: f64, step: f64) -> Result<Vec<ZeroRecord>> {
        let ctx = self.ctx.clone();
        let mp = ctx.mp();
        let f = |x: &Real, m: &mut Mp| {
            let v = self.eval_at(&Complex::real(x.clone()), m.bits())?;
            let mut mp = Mp::new(v.value.re.prec());
            let pi = mp.pi();
            let s = mp.exp(&(&pi * &x.abs()).mul_pow2(-2));
            Ok(v.real_estimate().scale(&s))
        };
        isolate_zeros(f, &mp.f(lo), &mp.f(hi), &mp.f(step), &ctx)
    }
}

pub fn xi_heat(z: &Complex, lambda: f64, ctx: &PrecisionContext) -> Result<XiValue> {
    HeatFlow::new(lambda, z.re.to_f64().abs(), ctx)?.eval(z)
}

/// e^{−λD²}p = Σ_n (−λ)^n/n! p^{(2n)}, exact over the rationals.
pub fn heat_poly(p: &RealPolynomial, lambda: &Rational) -> RealPolynomial {
    let mut out = p.clone();
    let mut d = p.clone();
    let mut coef = Rational::one();
    let mut n = 0i64;
    loop {
        d = d.derivative().derivative();
        if d.is_zero() {
            break;
        }
        n += 1;
        coef = -(&coef * lambda) / Rational::from_integer(n.into());
        out = &out + &d.scale(&coef);
    }
    out
}

/// Indices n (0-based) with x_{n+1} − x_n ≤ π/2. Observed spacing only; a
/// hit is a diagnostic, not a failure.
pub fn close_spacings(zeros: &[ZeroRecord]) -> Vec<usize> {
    let half_pi = core::f64::consts::FRAC_PI_2;
    zeros
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[1].location.to_f64() - w[0].location.to_f64()) <= half_pi)
        .map(|(i, _)| i)
        .collect()
}

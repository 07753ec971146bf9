//! Tanh-sinh quadrature with level doubling and adaptive panel splitting.
//!
//! Abscissae are stored by their distance to the nearest endpoint, so nodes
//! crowding an endpoint keep full relative accuracy.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::real::{Mp, Real};

use super::{PrecisionContext, QuadratureResult};

const MIN_LEVEL: usize = 3;
const MAX_DEPTH: usize = 40;
const MAX_PANELS: u64 = 20_000;

#[derive(Clone, Debug)]
struct Node {
    /// 1 − |x| on the reference interval [−1, 1].
    delta: Real,
    /// Reference weight (π/2)cosh t / cosh²((π/2) sinh t), without the step h.
    w: Real,
}

/// Reference tanh-sinh abscissae and weights, built lazily per level.
///
/// Level 0 holds t = 0, 1, 2, …; level l ≥ 1 holds the odd multiples of 2^-l.
/// Each stored node stands for the symmetric pair ±t.
#[derive(Clone, Debug)]
pub struct TanhSinh {
    bits: usize,
    t_max: f64,
    center_w: Option<Real>,
    levels: Vec<Vec<Node>>,
}

impl TanhSinh {
    pub fn new(bits: usize) -> TanhSinh {
        // Past t_max the weights fall below 2^-(bits+16).
        let t_max = libm::asinh(((bits as f64) + 16.0) * core::f64::consts::LN_2 / core::f64::consts::PI + 1.0);
        TanhSinh {
            bits,
            t_max,
            center_w: None,
            levels: Vec::new(),
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn node(&self, t: &Real, mp: &mut Mp) -> Node {
        let pi = mp.pi();
        let et = mp.exp(t);
        let emt = et.recip();
        let sinh = (&et - &emt).mul_pow2(-1);
        let cosh = (&et + &emt).mul_pow2(-1);
        let u = &pi.mul_pow2(-1) * &sinh;
        let e2u = mp.exp(&u.mul_pow2(1));
        let one = mp.one();
        let denom = &e2u + &one;
        let delta = &Real::from_i64(2, self.bits) / &denom;
        // (π/2)cosh t / cosh² u = 2π cosh t · e^{2u} / (e^{2u} + 1)².
        let w = &(&pi.mul_pow2(1) * &cosh) * &(&e2u / &(&denom * &denom));
        Node { delta, w }
    }

    fn ensure(&mut self, level: usize, mp: &mut Mp) {
        if self.center_w.is_none() {
            let pi = mp.pi();
            self.center_w = Some(pi.mul_pow2(-1));
        }
        while self.levels.len() <= level {
            let l = self.levels.len();
            let mut nodes = Vec::new();
            let step = libm::ldexp(1.0, -(l as i32));
            let mut j: u64 = if l == 0 { 1 } else { 0 };
            loop {
                let k = if l == 0 { j } else { 2 * j + 1 };
                let tf = k as f64 * step;
                if tf > self.t_max {
                    break;
                }
                let t = Real::from_u64(k, self.bits).mul_pow2(-(l as i64));
                nodes.push(self.node(&t, mp));
                j += 1;
            }
            self.levels.push(nodes);
        }
    }
}

/// Upper limit of integration.
#[derive(Clone, Debug)]
pub enum Upper {
    Finite(Real),
    Infinity,
}

/// Tail information for an infinite upper limit, as a function of the cut T.
pub enum Tail<'a> {
    /// A proven bound on |∫_T^∞ f|.
    Bound(&'a mut dyn FnMut(&Real, &mut Mp) -> Real),
    /// An estimate of ∫_T^∞ f together with a bound on the estimate's error.
    Estimate(&'a mut dyn FnMut(&Real, &mut Mp) -> (Real, Real)),
}

struct Panel {
    value: Real,
    error: Real,
    evals: u64,
    converged: bool,
    /// Level differences reached the rounding floor without meeting tolerance.
    precision_limited: bool,
}

fn tanh_sinh_panel<F>(f: &mut F, a: &Real, b: &Real, rule: &mut TanhSinh, mp: &mut Mp, tol: Option<&Real>, ctx: &PrecisionContext, abs_floor: &Real, max_level: usize) -> Panel
where
    F: FnMut(&Real, &mut Mp) -> Real,
{
    let hl = (b - a).mul_pow2(-1);
    let c = (a + b).mul_pow2(-1);
    rule.ensure(max_level, mp);
    let mut sum = mp.zero();
    let mut abs = mp.zero();
    let mut evals = 0u64;
    let cw = rule.center_w.clone().expect("center weight");
    let fc = f(&c, mp);
    evals += 1;
    sum = &sum + &(&cw * &fc);
    abs = &abs + &(&cw * &fc).abs();
    let mut prev: Option<Real> = None;
    let mut last_diff = mp.zero();
    let eps = mp.eps();
    for l in 0..=max_level {
        for node in &rule.levels[l] {
            let d = &hl * &node.delta;
            let xr = b - &d;
            let xl = a + &d;
            let fr = f(&xr, mp);
            let fl = f(&xl, mp);
            evals += 2;
            let s = &fr + &fl;
            sum = &sum + &(&node.w * &s);
            abs = &abs + &(&node.w * &(&fr.abs() + &fl.abs()));
        }
        let value = (&hl * &sum).mul_pow2(-(l as i64));
        let rounding = (&(&hl * &abs).mul_pow2(-(l as i64)) * &eps).mul_i64(16);
        if let Some(p) = &prev {
            last_diff = (&value - p).abs();
            if l >= MIN_LEVEL {
                let target = match tol {
                    Some(t) => t.clone(),
                    None => &(&ctx.rel(mp) * &value.abs()) + abs_floor,
                };
                let err = &last_diff + &rounding;
                if err <= target || last_diff <= rounding {
                    let converged = err <= target;
                    return Panel {
                        value,
                        error: err,
                        evals,
                        converged,
                        precision_limited: !converged,
                    };
                }
            }
        }
        if l == max_level {
            let error = &last_diff + &rounding;
            return Panel {
                value,
                error,
                evals,
                converged: false,
                precision_limited: false,
            };
        }
        prev = Some(value);
    }
    unreachable!()
}

fn adaptive<F>(f: &mut F, a: &Real, b: &Real, rule: &mut TanhSinh, mp: &mut Mp, ctx: &PrecisionContext, abs_floor: &Real, max_level: usize) -> Result<QuadratureResult>
where
    F: FnMut(&Real, &mut Mp) -> Real,
{
    let root = tanh_sinh_panel(f, a, b, rule, mp, None, ctx, abs_floor, max_level);
    if root.converged {
        return Ok(QuadratureResult {
            value: root.value,
            error_bound: root.error,
            evaluations: root.evals,
        });
    }
    let total_tol = &(&ctx.rel(mp) * &root.value.abs()) + abs_floor;
    let mut value = mp.zero();
    let mut error = mp.zero();
    let mut evals = root.evals;
    let mut stack: Vec<(Real, Real, usize, Real)> = Vec::new();
    let m = (a + b).mul_pow2(-1);
    let half = total_tol.mul_pow2(-1);
    stack.push((m.clone(), b.clone(), 1, half.clone()));
    stack.push((a.clone(), m, 1, half));
    let mut panels = 0u64;
    if root.precision_limited {
        return Err(precision_limited(a, b));
    }
    while let Some((lo, hi, depth, tol)) = stack.pop() {
        let p = tanh_sinh_panel(f, &lo, &hi, rule, mp, Some(&tol), ctx, abs_floor, max_level);
        evals += p.evals;
        panels += 1;
        if p.converged {
            value = &value + &p.value;
            error = &error + &p.error;
            continue;
        }
        if p.precision_limited {
            return Err(precision_limited(&lo, &hi));
        }
        if depth >= MAX_DEPTH || panels >= MAX_PANELS {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                detail: alloc::format!("panel [{}, {}] at depth {}", lo.to_f64(), hi.to_f64(), depth),
            });
        }
        let mid = (&lo + &hi).mul_pow2(-1);
        let half = tol.mul_pow2(-1);
        stack.push((mid.clone(), hi, depth + 1, half.clone()));
        stack.push((lo, mid, depth + 1, half));
    }
    Ok(QuadratureResult {
        value,
        error_bound: error,
        evaluations: evals,
    })
}

fn precision_limited(a: &Real, b: &Real) -> Error {
    Error::NoConvergence {
        what: "adaptive quadrature",
        detail: alloc::format!("rounding floor above tolerance on [{}, {}]", a.to_f64(), b.to_f64()),
    }
}

fn max_level_for(bits: usize) -> usize {
    // Enough levels that a smooth panel converges before splitting.
    let mut l = 6;
    let mut b = 128;
    while b < bits {
        b *= 2;
        l += 1;
    }
    l
}

/// ∫_a^b f. For an infinite upper limit a tail is required; the cut T grows
/// by doubling until the tail contribution is below a quarter of the
/// tolerance. Precision is doubled (up to `max_escalations`) when rounding
/// prevents the tolerance from being met.
pub fn integrate<F>(mut f: F, a: &Real, b: &Upper, tail: Option<Tail<'_>>, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    F: FnMut(&Real, &mut Mp) -> Real,
{
    let mut tail = tail;
    let mut last_err = None;
    for k in 0..=ctx.max_escalations {
        let c = ctx.escalated(k).expect("within escalations");
        let mut rule = TanhSinh::new(c.bits);
        match integrate_with(&mut f, a, b, tail.as_mut(), &c, &mut rule) {
            Ok(r) => return Ok(r),
            Err(e @ Error::NoConvergence { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// [`integrate`] at the precision of `rule` with no escalation, reusing the
/// cached abscissae across calls.
pub fn integrate_with<F>(f: &mut F, a: &Real, b: &Upper, tail: Option<&mut Tail<'_>>, ctx: &PrecisionContext, rule: &mut TanhSinh) -> Result<QuadratureResult>
where
    F: FnMut(&Real, &mut Mp) -> Real,
{
    let ctx = &ctx.with_bits(rule.bits());
    let mut mp = ctx.mp();
    let max_level = max_level_for(ctx.bits);
    let abs_tol = ctx.abs(&mp);
    let result = match b {
        Upper::Finite(b) => adaptive(f, a, b, rule, &mut mp, ctx, &abs_tol, max_level)?,
        Upper::Infinity => {
            let tail = tail.ok_or(Error::TailBoundMissing)?;
            let mut value = mp.zero();
            let mut error = mp.zero();
            let mut evals = 0;
            let mut lo = a.clone();
            let one = mp.one();
            let mut hi = if a.is_negative() { one.clone() } else { a + &one };
            // Piece floors sum to abs_tol/2; the tail takes at most a quarter.
            let mut floor = abs_tol.mul_pow2(-2);
            loop {
                let piece = adaptive(f, &lo, &hi, rule, &mut mp, ctx, &floor, max_level)?;
                value = &value + &piece.value;
                error = &error + &piece.error_bound;
                evals += piece.evaluations;
                let (est, bound) = match tail {
                    Tail::Bound(g) => (mp.zero(), g(&hi, &mut mp)),
                    Tail::Estimate(g) => g(&hi, &mut mp),
                };
                let total = &value + &est;
                if bound <= ctx.tolerance(&total, &mp).mul_pow2(-2) {
                    break QuadratureResult {
                        value: total,
                        error_bound: &error + &bound,
                        evaluations: evals,
                    };
                }
                if hi.to_f64() > 1e8 {
                    return Err(Error::NoConvergence {
                        what: "semi-infinite quadrature",
                        detail: "tail bound still above tolerance at T = 1e8".into(),
                    });
                }
                lo = hi.clone();
                hi = hi.mul_pow2(1);
                floor = floor.mul_pow2(-1);
            }
        }
    };
    if result.error_bound > ctx.tolerance(&result.value, &mp) {
        return Err(Error::NoConvergence {
            what: "quadrature",
            detail: alloc::format!(
                "error bound {:e} above tolerance for value {:e}",
                result.error_bound.to_f64(),
                result.value.to_f64()
            ),
        });
    }
    Ok(result)
}

/// Tanh-sinh nodes on [a, b] split into equal panels, with the level of each
/// node recorded so that nested sums at every level come from one set of
/// integrand samples. Used for transforms evaluated at many frequencies.
#[derive(Clone, Debug)]
pub struct WeightedNodes {
    pub x: Vec<Real>,
    /// Panel-scaled reference weights, without the level step 2^-l.
    pub w: Vec<Real>,
    pub level: Vec<u8>,
    pub max_level: usize,
}

impl WeightedNodes {
    pub fn new(a: &Real, b: &Real, panels: usize, max_level: usize, rule: &mut TanhSinh, mp: &mut Mp) -> WeightedNodes {
        rule.ensure(max_level, mp);
        let mut x = Vec::new();
        let mut w = Vec::new();
        let mut level = Vec::new();
        let width = &(b - a) / &Real::from_u64(panels as u64, mp.bits());
        let cw = rule.center_w.clone().expect("center weight");
        for p in 0..panels {
            let lo = a + &(&width * &Real::from_u64(p as u64, mp.bits()));
            let hi = if p + 1 == panels { b.clone() } else { &lo + &width };
            let hl = (&hi - &lo).mul_pow2(-1);
            x.push((&lo + &hi).mul_pow2(-1));
            w.push(&hl * &cw);
            level.push(0);
            for (l, nodes) in rule.levels.iter().enumerate().take(max_level + 1) {
                for node in nodes {
                    let d = &hl * &node.delta;
                    let wt = &hl * &node.w;
                    x.push(&hi - &d);
                    w.push(wt.clone());
                    level.push(l as u8);
                    x.push(&lo + &d);
                    w.push(wt);
                    level.push(l as u8);
                }
            }
        }
        WeightedNodes { x, w, level, max_level }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Given integrand samples g_i at the nodes, returns (I_L, |I_L − I_{L−1}|, Σ|w g| scaled at level L).
    pub fn sums(&self, g: &[Real]) -> (Real, Real, Real) {
        let l = self.max_level;
        let bits = g.first().map(|v| v.prec()).unwrap_or(64);
        let mut fine = Real::zero(bits);
        let mut coarse = Real::zero(bits);
        let mut abs = Real::zero(bits);
        for i in 0..self.x.len() {
            let t = &self.w[i] * &g[i];
            abs = &abs + &t.abs();
            if (self.level[i] as usize) < l {
                coarse = &coarse + &t;
            }
            fine = &fine + &t;
        }
        let fine = fine.mul_pow2(-(l as i64));
        let coarse = coarse.mul_pow2(-(l as i64 - 1));
        let abs = abs.mul_pow2(-(l as i64));
        let diff = (&fine - &coarse).abs();
        (fine, diff, abs)
    }
}
